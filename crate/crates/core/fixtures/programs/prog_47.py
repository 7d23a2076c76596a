"""Analysis script.

import fake_docstring_module
"""
from __future__ import annotations
import functools
from typing import (
    alpha,
    beta,
)
import csv
import logging
from matplotlib import pyplot
try:
    import yaml
except ImportError:
    pass
from . import sibling
from .helpers import tool
# import commented_out_module
TEMPLATE = 'import quoted_module'
NOTE = """
from multiline_string import thing
"""
x = 1  # from inline_comment import y
print('done')
