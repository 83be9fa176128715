# config/__init__.py
# Copyright (C) 2024 mdcsim developers
#
# This module is part of mdcsim and is released under
# the MIT License: http://www.opensource.org/licenses/mit-license.php

from .config import ExperimentConfig
from .output import OutputDir, Table

__all__ = ['ExperimentConfig', 'OutputDir', 'Table']
