# -*- coding: utf-8 -*-
#
# Pseudopod documentation build configuration file.
#
# This file is execfile()d with the current directory set to its
# containing dir.

import os
import sys
from datetime import datetime

sys.path.insert(0, os.path.abspath('../../'))
sys.path.insert(0, os.path.abspath('.'))

import pseudopod

# -- General configuration ------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.intersphinx',
    'sphinx.ext.viewcode',
]

templates_path = ['_templates']

source_suffix = '.rst'

master_doc = 'index'

project = u'Pseudopod'
copyright = u'%s, Pseudopod developers' % datetime.utcnow().strftime('%Y')

# The short X.Y version.
version = pseudopod.__version__
# The full version, including alpha/beta/rc tags.
release = pseudopod.__version__

exclude_patterns = []

pygments_style = 'sphinx'


# -- Options for HTML output ----------------------------------------------

html_theme = 'default'

on_rtd = os.getenv('READTHEDOCS', None) == 'True'

if not on_rtd:  # only import and set the theme if we're building docs locally
    import sphinx_rtd_theme
    html_theme = 'sphinx_rtd_theme'

htmlhelp_basename = 'Pseudopoddoc'


# -- Options for LaTeX output ---------------------------------------------

latex_elements = {}

latex_documents = [
    ('index', 'Pseudopod.tex', u'Pseudopod Documentation',
     u'Pseudopod developers', 'manual'),
]


# -- Options for manual page output ---------------------------------------

man_pages = [
    ('index', 'pseudopod', u'Pseudopod Documentation',
     [u'Pseudopod developers'], 1)
]


# -- Options for Texinfo output -------------------------------------------

texinfo_documents = [
    ('index', 'Pseudopod', u'Pseudopod Documentation',
     u'Pseudopod developers', 'Pseudopod', 'Process calculus of growing pseudopodia.',
     'Miscellaneous'),
]


intersphinx_mapping = {'python': ('https://docs.python.org/3', None)}
