# __init__.py
# Copyright (C) 2024 mdcsim developers
#
# This module is part of mdcsim and is released under
# the MIT License: http://www.opensource.org/licenses/mit-license.php

from mdcsim.__version__ import __version__

__all__ = ['__version__']
