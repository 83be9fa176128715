# help/__init__.py
# Copyright (C) 2024 mdcsim developers
#
# This module is part of mdcsim and is released under
# the MIT License: http://www.opensource.org/licenses/mit-license.php

from collections import namedtuple

Topic = namedtuple('Topic', 'title text')

TOPICS = {}
# result table name -> column names
TABLES = {}


def add_topic(name, title, text):
    TOPICS[name] = Topic(title, text)


def add_table(name, header):
    TABLES[name] = tuple(header)


import mdcsim.help.topics  # add topics and tables

from mdcsim.help.help import HelpCommand, make_help


__all__ = ['HelpCommand', 'make_help']
