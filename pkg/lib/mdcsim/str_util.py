# str_util.py
# Copyright (C) 2024 mdcsim developers
#
# This module is part of mdcsim and is released under
# the MIT License: http://www.opensource.org/licenses/mit-license.php

import string
import sys

from textwrap import dedent as _dedent


def qname(arg):
    if not arg:
        return ''
    arg = str(arg)
    if ' ' not in arg:
        return arg
    elif arg[0] == arg[-1] == '"':
        return arg
    elif arg[0] == '<' and arg[-1] == '>':
        return arg
    elif '"' not in arg:
        return '"' + arg + '"'
    else:
        # both spaces and quotes, angle brackets are unambiguous
        return '<' + arg + '>'


def code_name(n, k):
    """(n,k) notation used for erasure codes"""
    return '(%d,%d)' % (n, k)


def int_set(values):
    return '{' + ', '.join(str(v) for v in sorted(values)) + '}'


def num(value):
    """Shortest round-tripping text for a number.

    Used for every number written to result tables, so reruns are
    byte-identical.
    """
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, int):
        return str(value)
    return repr(float(value))


class Formatter(string.Formatter):
    def convert_field(self, value, conversion):
        if 'S' == conversion:
            return int_set(value)
        elif 'P' == conversion:
            return '%.4g%%' % (100.0 * value)
        else:
            return super(Formatter, self).convert_field(value, conversion)


_formatter = Formatter()


class Template(str):
    def __new__(cls, pattern, strip=True, dedent=None):
        if dedent is None:
            dedent = strip
        if dedent:
            pattern = _dedent(pattern)
        if strip:
            pattern = pattern.strip()
        return str.__new__(cls, pattern)

    def format(__self, *__args, **__kwargs):
        # use __self etc to don't clash with __kwargs keys
        return _formatter.vformat(__self, __args, __kwargs)

    def __call__(__self, *__args, **__kwargs):
        return __self.format(*__args, **__kwargs)

    def __add__(self, other):
        return self.__class__(str(self) + other, strip=False)

    __iadd__ = __add__


class NamespaceFormatter(Formatter):
    def __init__(self, *namespaces):
        self.namespaces = namespaces

    def get_value(self, key, args, kwargs):
        if isinstance(key, str):
            try:
                return kwargs[key]
            except KeyError:
                for namespace in self.namespaces:
                    try:
                        return namespace[key]
                    except KeyError:
                        pass
        return super(NamespaceFormatter, self).get_value(key, args, kwargs)


def auto_format(pattern, **template_kwargs):
    template = Template(pattern, **template_kwargs)
    frame = sys._getframe(1)
    fmt = NamespaceFormatter(frame.f_locals, frame.f_globals)
    return fmt.format(template)


T = Template
a = auto_format
