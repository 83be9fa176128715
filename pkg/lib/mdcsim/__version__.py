# __version__.py
# Copyright (C) 2024 mdcsim developers
#
# This module is part of mdcsim and is released under
# the MIT License: http://www.opensource.org/licenses/mit-license.php

__version__ = '0.1.0'
