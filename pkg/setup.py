# -*- coding: utf-8 -*-
#

import codecs

from setuptools import setup, find_packages

import pseudopod


DESCRIPTION = 'Process calculus of growing pseudopodia: semantics, bisimilarity and laws'
AUTHOR = 'Pseudopod developers'
LICENSE = 'MIT'
CLASSIFIERS = [
    "Development Status :: 4 - Beta",
    "License :: OSI Approved :: MIT License",
    "Operating System :: POSIX",
    "Programming Language :: Python",
    "Programming Language :: Python :: 3",
    "Programming Language :: Python :: 3.9",
    "Topic :: Scientific/Engineering"
]


def get_contents(filename):
    with codecs.open(filename, 'rb', encoding='utf-8') as handle:
        return handle.read()


REQUIRES = [
    'click',
    'lark'
]

README = get_contents('README.rst')

setup(
    name='pseudopod',
    version=pseudopod.__version__,
    author=AUTHOR,
    description=DESCRIPTION,
    long_description=README,
    classifiers=CLASSIFIERS,
    license=LICENSE,
    zip_safe=True,
    install_requires=REQUIRES,
    python_requires='>=3.9',
    entry_points={
        'console_scripts': ['pseudopod = pseudopod.cli:main'],
    },
    packages=find_packages(exclude=['test', 'test.*']))
