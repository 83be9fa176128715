#!/usr/bin/env python

import os
import re

from setuptools import setup, find_packages

PKG = 'mdcsim'
SRC = os.path.join('lib', PKG)

requires = ['PyYAML', 'numpy']

tests_require = ['pytest', 'hypothesis']

LICENSE_LINE = \
    "the MIT License: http://www.opensource.org/licenses/mit-license.php"


def get_version(fname):
    with open(fname) as f:
        match = re.search(r"^__version__\s*=\s*['\"]([^'\"]+)['\"]",
                          f.read(), re.M)
    if match is None:
        raise RuntimeError("no __version__ in %s" % fname)
    return match.group(1)


def check_licenses(top):
    """Every module under top carries the license header."""
    for root, folders, files in os.walk(top):
        for f in files:
            if not f.endswith('.py') or f[0] in '.#~':
                continue
            fname = os.path.join(root, f)
            with open(fname) as src:
                if LICENSE_LINE not in src.read():
                    raise AssertionError("%s doesn't have license" % fname)


check_licenses(SRC)


def read_descr(fname):
    """(short, long) description from README.

    The layout is: title, '=====' underline, a one-paragraph summary,
    then the long text up to a '-----' line.
    """
    with open(fname) as f:
        lines = [line.rstrip() for line in f]
    assert '=====' in lines[1], "%s: no title underline" % fname
    paragraphs = []
    current = []
    for line in lines[2:]:
        if '-----' in line:
            break
        if line.strip():
            current.append(line)
        elif current:
            paragraphs.append(current)
            current = []
    if current:
        paragraphs.append(current)
    short = ' '.join(line.strip() for line in paragraphs[0])
    long = '\n\n'.join('\n'.join(p) for p in paragraphs[1:])
    return short, long


short_descr, long_descr = read_descr('README.txt')


setup(
    name=PKG,
    version=get_version(os.path.join(SRC, '__version__.py')),
    author='mdcsim developers',
    description=short_descr,
    long_description=long_descr,
    license='MIT',
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Environment :: Console',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Operating System :: OS Independent',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering',
        'Topic :: System :: Networking',
        ],
    package_dir={'': 'lib'},
    packages=find_packages('lib'),
    entry_points={
        'console_scripts':
            ['mdc = mdcsim.main:main']
        },
    zip_safe=True,
    python_requires='>=3.8',
    install_requires=requires,
    extras_require={'test': tests_require},
)
