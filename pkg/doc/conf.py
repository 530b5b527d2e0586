# -*- coding: utf-8 -*-
#
# sepy documentation build configuration file.
#
# This file is execfile()d with the current directory set to its containing dir.

import sys, os

# the package is one level up
sys.path.insert(0, os.path.abspath('..'))

# -- General configuration -----------------------------------------------------

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.doctest', 'sphinx.ext.mathjax',
              'sphinx.ext.ifconfig']

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'sepy'

from sepy import __version__
# The short X.Y version.
version = '.'.join(__version__.split('.')[:2])
# The full version, including alpha/beta/rc tags.
release = __version__

exclude_patterns = ['_build']
pygments_style = 'sphinx'

# -- Options for HTML output ---------------------------------------------------

html_theme = 'default'
html_static_path = ['_static']
htmlhelp_basename = 'sepydoc'

# -- Options for LaTeX output --------------------------------------------------

latex_documents = [
  ('index', 'sepy.tex', u'sepy Documentation', u'', 'manual'),
]

# -- Options for manual page output --------------------------------------------

man_pages = [
    ('index', 'sepy', u'sepy Documentation', [], 1)
]

autoclass_content = 'both'
