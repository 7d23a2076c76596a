"""Analysis script.

import fake_docstring_module
"""
from __future__ import annotations
from glob import (
    alpha,
    beta,
)
import logging
import typing as m66
from bs4 import (
    alpha,
    beta,
)
import time
from .helpers import tool
# import commented_out_module
TEMPLATE = 'import quoted_module'
NOTE = """
from multiline_string import thing
"""
x = 1  # from inline_comment import y
print('done')
