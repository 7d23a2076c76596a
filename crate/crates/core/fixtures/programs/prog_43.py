"""Analysis script.

import fake_docstring_module
"""
from __future__ import annotations
def load():
    import numpy as m5
    return None
import itertools
import functools as m10
import models
from .helpers import tool
# import commented_out_module
TEMPLATE = 'import quoted_module'
NOTE = """
from multiline_string import thing
"""
x = 1  # from inline_comment import y
print('done')
