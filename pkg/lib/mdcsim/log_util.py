# log_util.py
# Copyright (C) 2024 mdcsim developers
#
# This module is part of mdcsim and is released under
# the MIT License: http://www.opensource.org/licenses/mit-license.php

import logging
import sys
import time

from contextlib import contextmanager

VERBOSE_FORMAT = "%(levelname)s:%(processName)s:%(name)s:%(message)s"
DEFAULT_FORMAT = "%(levelname)s %(message)s"


class class_logger(object):
    """descriptor, used to make logger for attribute in first usage"""
    def __get__(self, instance, owner):
        # look in the class itself so subclasses log under their own name
        log = owner.__dict__.get('__log__')
        if log is None:
            log = logging.getLogger(owner.__module__ + '.' + owner.__name__)
            owner.__log__ = log
        return log


def log_level(args):
    if getattr(args, 'verbose', False):
        return logging.DEBUG
    if getattr(args, 'quiet', False):
        return logging.WARNING
    return logging.INFO


def setup_log(args, stream=None):
    """Attach a handler to the root logger and return it.

    Records go to stderr; stdout may carry result tables (--out -).
    """
    root = logging.getLogger()
    level = log_level(args)
    root.setLevel(level)
    handler = logging.StreamHandler(stream if stream is not None
                                    else sys.stderr)
    handler.setFormatter(logging.Formatter(
        VERBOSE_FORMAT if level == logging.DEBUG else DEFAULT_FORMAT))
    root.addHandler(handler)
    return handler


@contextmanager
def timed(log, msg, *args):
    """Log ``msg % args`` at DEBUG with the elapsed seconds appended.

    Nothing is logged when the block raises.
    """
    start = time.perf_counter()
    yield
    log.debug(msg + " in %.2fs", *(args + (time.perf_counter() - start,)))
