# exceptions.py
# Copyright (C) 2024 mdcsim developers
#
# This module is part of mdcsim and is released under
# the MIT License: http://www.opensource.org/licenses/mit-license.php

from .str_util import qname


class BaseError(RuntimeError):
    """Base error class for mdcsim"""
    EXIT_CODE = 255


class ParameterError(BaseError, ValueError):
    """Invalid parameter passed to an analytic or simulation routine"""
    EXIT_CODE = 2


class ConstraintError(ParameterError):
    """Parameters violate a model constraint (e.g. L < T)"""


class ConfigError(BaseError):
    EXIT_CODE = 2


class InfeasibleDesignError(BaseError):
    """No packet fraction vector satisfies the design constraints"""
    EXIT_CODE = 3


class SimulationError(BaseError):
    """Blockage simulation failed"""
    EXIT_CODE = 4


class FileError(ConfigError):
    """Base file error"""
    MSG = "%(role)s %(file)s error"

    def __init__(self, file, role='File'):
        args = {'file': qname(file),
                'role': role}
        super(FileError, self).__init__(file, role)
        self._str = self.MSG % args
        self.file = file
        self.role = role

    def __str__(self):
        return self._str

    def __repr__(self):
        return self._str


class MissingFileError(FileError):
    """File not found"""
    MSG = "%(role)s %(file)s does not exist"


class OutputDirError(FileError):
    """Output path exists and is not a directory"""
    MSG = "%(role)s %(file)s is not a directory"
