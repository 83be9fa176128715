import argparse
import io
import logging
import unittest

from mdcsim.log_util import class_logger, log_level, setup_log, timed


class Base(object):
    log = class_logger()


class Derived(Base):
    pass


class TestClassLogger(unittest.TestCase):
    def test_name(self):
        self.assertEqual(__name__ + '.Base', Base.log.name)

    def test_subclass_has_own_logger(self):
        self.assertEqual(__name__ + '.Derived', Derived.log.name)
        self.assertIs(Base.log, Base().log)


class TestSetupLog(unittest.TestCase):
    def args(self, verbose=False, quiet=False):
        return argparse.Namespace(verbose=verbose, quiet=quiet)

    def test_levels(self):
        self.assertEqual(logging.INFO, log_level(self.args()))
        self.assertEqual(logging.DEBUG, log_level(self.args(verbose=True)))
        self.assertEqual(logging.WARNING, log_level(self.args(quiet=True)))

    def test_handler(self):
        stream = io.StringIO()
        handler = setup_log(self.args(quiet=True), stream)
        try:
            logging.getLogger('mdcsim.test').info("hidden")
            logging.getLogger('mdcsim.test').warning("shown")
        finally:
            logging.getLogger().removeHandler(handler)
        self.assertEqual("WARNING shown\n", stream.getvalue())


class TestTimed(unittest.TestCase):
    def test_logs_elapsed(self):
        log = logging.getLogger('mdcsim.test.timed')
        with self.assertLogs(log, logging.DEBUG) as cm:
            with timed(log, "point T=%d", 40):
                pass
        self.assertEqual(1, len(cm.records))
        self.assertRegex(cm.records[0].getMessage(),
                         r'^point T=40 in \d+\.\d\ds$')

    def test_silent_on_error(self):
        log = logging.getLogger('mdcsim.test.timed')
        with self.assertRaises(ZeroDivisionError):
            with timed(log, "never"):
                1 / 0
