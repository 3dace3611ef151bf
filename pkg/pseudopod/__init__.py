# -*- coding: utf-8 -*-
#
# Pseudopod
#
# Copyright 2026 Pseudopod developers
#
# Available under the MIT license. See LICENSE for details.
#

"""
pseudopod
~~~~~~~~~

Process terms, transition systems and equivalences for a slime mould
process calculus.
"""

__version__ = '0.1.0'
