# -*- coding: utf-8 -*-
#
# sporcalc documentation build configuration file.
#
# This file is execfile()d with the current directory set to its
# containing dir.

import os
import sys

sys.path.insert(0, os.path.abspath(".."))

import sporcalc


# -- General configuration ------------------------------------------------

extensions = ["sphinx.ext.autodoc"]

templates_path = ["_templates"]

source_suffix = ".rst"

master_doc = "index"

project = u"sporcalc"
copyright = u"2020, The sporcalc developers"
author = u"The sporcalc developers"

version = sporcalc.__version__
release = sporcalc.__version__

language = None

exclude_patterns = ["_build"]

add_function_parentheses = True

add_module_names = True

pygments_style = "sphinx"

todo_include_todos = True


# -- Options for HTML output ----------------------------------------------

html_theme = "alabaster"

html_theme_options = {
    "show_powered_by": False,
    "show_related": False,
    "note_bg": "#FFF59C",
}

html_use_smartypants = True

html_show_sourcelink = False

html_show_sphinx = False

html_show_copyright = True

htmlhelp_basename = "sporcalcdoc"


# -- Options for LaTeX output ---------------------------------------------

latex_elements = {}

latex_documents = [
    (master_doc, "sporcalc.tex", u"sporcalc documentation", author, "manual",)
]


# -- Options for manual page output ---------------------------------------

man_pages = [(master_doc, "sporcalc", u"sporcalc documentation", [author], 1)]


# -- Options for Texinfo output -------------------------------------------

texinfo_documents = [
    (
        master_doc,
        "sporcalc",
        u"sporcalc documentation",
        author,
        "sporcalc",
        "Exact invariants of surface-plus-one-relation groups.",
        "Miscellaneous",
    )
]
