# config/attrs.py
# Copyright (C) 2024 mdcsim developers
#
# This module is part of mdcsim and is released under
# the MIT License: http://www.opensource.org/licenses/mit-license.php

import math

from mdcsim.exceptions import ConfigError
from mdcsim.log_util import class_logger


class attr(object):
    def __init__(self, default=None, help=None):
        self._default = default
        self._name = None
        self._attr_name = None
        self.help = help

    def set_name(self, name):
        self._name = name
        self._attr_name = '_' + name

    def __set_name__(self, owner, name):
        self.set_name(name)

    @property
    def name(self):
        return self._name

    @property
    def default(self):
        return self._default

    def get_val(self, instance):
        if not hasattr(instance, self._attr_name):
            return self._default
        return getattr(instance, self._attr_name)

    def __get__(self, instance, owner):
        if instance is None:
            return self  # return attr if class access
        return self.get_val(instance)

    def __set__(self, instance, value):
        self.set_val(instance, value)

    def set_val(self, instance, value):
        if value is not None:
            value = self.from_yaml(value)
        setattr(instance, self._attr_name, value)

    def error(self, msg, *args):
        return ConfigError(("%s: " % self._name) + (msg % args))

    def from_yaml(self, val):
        raise NotImplementedError(self._name)

    def to_yaml(self, val):
        return val


class bool_attr(attr):
    def from_yaml(self, val):
        if not isinstance(val, bool):
            raise self.error("expected true or false, got %r", val)
        return val


class int_attr(attr):
    def __init__(self, default=None, min=None, help=None):
        super(int_attr, self).__init__(default, help)
        self._min = min

    def from_yaml(self, val):
        if isinstance(val, bool) or not isinstance(val, int):
            raise self.error("expected an integer, got %r", val)
        if self._min is not None and val < self._min:
            raise self.error("must be >= %d, got %d", self._min, val)
        return val


class float_attr(attr):
    def __init__(self, default=None, min=None, max=None, help=None):
        super(float_attr, self).__init__(default, help)
        self._min = min
        self._max = max

    def from_yaml(self, val):
        if isinstance(val, bool) or not isinstance(val, (int, float)):
            raise self.error("expected a number, got %r", val)
        val = float(val)
        if not math.isfinite(val):
            raise self.error("must be finite, got %r", val)
        if self._min is not None and val < self._min:
            raise self.error("must be >= %r, got %r", self._min, val)
        if self._max is not None and val > self._max:
            raise self.error("must be <= %r, got %r", self._max, val)
        return val


class str_attr(attr):
    def __init__(self, default=None, choices=None, help=None):
        super(str_attr, self).__init__(default, help)
        self._choices = choices

    def from_yaml(self, val):
        if not isinstance(val, str):
            raise self.error("expected a string, got %r", val)
        if self._choices is not None and val not in self._choices:
            raise self.error("expected one of %s, got %r",
                             ', '.join(self._choices), val)
        return val


class int_list_attr(attr):
    """Nonempty ascending list of positive integers"""
    def from_yaml(self, val):
        if not isinstance(val, (list, tuple)) or not val:
            raise self.error("expected a nonempty list, got %r", val)
        for item in val:
            if isinstance(item, bool) or not isinstance(item, int) \
                    or item < 1:
                raise self.error("expected positive integers, got %r", item)
        if any(b <= a for a, b in zip(val, val[1:])):
            raise self.error("must be strictly ascending, got %r", list(val))
        return tuple(val)

    def to_yaml(self, val):
        return None if val is None else list(val)


class per_path_attr(attr):
    """Nonnegative number shared by all paths, or one number per path"""
    def from_yaml(self, val):
        items = val if isinstance(val, (list, tuple)) else [val]
        if not items:
            raise self.error("expected a number or a nonempty list")
        out = []
        for item in items:
            if isinstance(item, bool) or not isinstance(item, (int, float)):
                raise self.error("expected a number, got %r", item)
            if not math.isfinite(item) or item < 0:
                raise self.error("must be finite and nonnegative, got %r",
                                 item)
            out.append(float(item))
        return out[0] if not isinstance(val, (list, tuple)) else tuple(out)

    def to_yaml(self, val):
        return list(val) if isinstance(val, tuple) else val


class choice_list_attr(attr):
    def __init__(self, default=None, choices=(), help=None):
        super(choice_list_attr, self).__init__(default, help)
        self._choices = tuple(choices)

    def from_yaml(self, val):
        if isinstance(val, str):
            val = [val]
        if not isinstance(val, (list, tuple)) or not val:
            raise self.error("expected a nonempty list, got %r", val)
        for item in val:
            if item not in self._choices:
                raise self.error("expected items from %s, got %r",
                                 ', '.join(self._choices), item)
        # canonical order, duplicates dropped
        return tuple(c for c in self._choices if c in val)

    def to_yaml(self, val):
        return None if val is None else list(val)


class RecordMeta(type):

    def __init__(cls, name, bases, dct):
        super(RecordMeta, cls).__init__(name, bases, dct)

        attrs = dict(getattr(cls, '__attrs__', {}))  # make a copy
        for name, val in dct.items():
            if isinstance(val, attr):
                attrs[name] = val
        cls.__attrs__ = attrs


class Record(object, metaclass=RecordMeta):
    """Set of typed attributes loaded from a flat YAML mapping"""

    log = class_logger()

    def __init__(self, **kwargs):
        for name, val in kwargs.items():
            self.set(name, val)

    def set(self, name, val):
        if name not in self.__attrs__:
            raise ConfigError("unknown key %r" % name)
        setattr(self, name, val)

    @classmethod
    def from_dict(cls, dct):
        if dct is None:
            dct = {}
        if not isinstance(dct, dict):
            raise ConfigError("expected a mapping of keys to values")
        unknown = sorted(str(k) for k in set(dct) - set(cls.__attrs__))
        if unknown:
            raise ConfigError("unknown keys: %s" % ', '.join(unknown))
        return cls(**dct)

    def to_dict(self):
        ret = {}
        for name, attr in sorted(self.__attrs__.items()):
            ret[name] = attr.to_yaml(attr.get_val(self))
        return ret
