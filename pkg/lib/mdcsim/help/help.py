# help/help.py
# Copyright (C) 2024 mdcsim developers
#
# This module is part of mdcsim and is released under
# the MIT License: http://www.opensource.org/licenses/mit-license.php

import argparse
import sys

from mdcsim.help import TABLES, TOPICS
from mdcsim.str_util import T, a


HELP = T("Help about commands, topics and result tables")
DESCR = T("""
    Aliases: --help, -h
    Lists:
    {prog} help commands
    {prog} help topics
    {prog} help tables

    A table name, e.g. {prog} help t_sweep, shows its columns.
    """)


def write_list(out, pairs):
    pairs = sorted(pairs)
    width = max(len(name) for name, _ in pairs)
    for name, text in pairs:
        out.write("%s  %s\n" % (name.ljust(width), text))


class HelpCommand(object):
    """Prints help; bound to the parsers by make_help."""
    NAME = 'help'
    require_load_config = False
    config = None

    parsers = {}
    prog = None

    def __init__(self, args, out=None):
        self.topic = args.topic
        self.usage = args.usage
        self.out = out if out is not None else sys.stdout

    def run(self):
        topic = self.topic
        if topic in self.parsers:
            parser = self.parsers[topic]
            if self.usage:
                parser.print_usage(self.out)
            else:
                parser.print_help(self.out)
        elif topic in TOPICS:
            self.out.write("%s\n\n%s\n" % TOPICS[topic])
        elif topic in TABLES:
            self.out.write("Table %s, columns:\n\n" % topic)
            self.out.write('\n'.join(TABLES[topic]) + '\n')
        elif topic == 'commands':
            self.out.write("Commands:\n\n")
            write_list(self.out, ((name, p.description)
                                  for name, p in self.parsers.items()
                                  if name is not None))
        elif topic == 'topics':
            self.out.write("Topics:\n\n")
            write_list(self.out, ((name, t.title)
                                  for name, t in TOPICS.items()))
        elif topic == 'tables':
            self.out.write("Result tables:\n\n")
            write_list(self.out, ((name, '%d columns' % len(header))
                                  for name, header in TABLES.items()))
        else:
            prog = self.prog
            self.out.write(a("""
                Unknown help topic: {topic}
                Use '{prog} help topics' or '{prog} help tables'
                """) + '\n')
            return 2
        return 0


def make_help(root_parser, subparsers, command_parsers):
    formatter = argparse.RawDescriptionHelpFormatter
    help_parser = subparsers.add_parser('help',
                                        help=HELP,
                                        description=HELP,
                                        epilog=DESCR.format(
                                            prog=root_parser.prog),
                                        formatter_class=formatter)
    help_parser.add_argument('topic', nargs='?', default=None,
                             help="command, topic or table name")
    help_parser.add_argument('--usage', action='store_true', default=False,
                             help="print only the usage line of a command")

    parsers = dict(command_parsers)
    parsers['help'] = help_parser
    parsers[None] = root_parser

    runner = type('BoundHelpCommand', (HelpCommand,),
                  {'parsers': parsers, 'prog': root_parser.prog})
    help_parser.set_defaults(cmd=runner)
    return runner
