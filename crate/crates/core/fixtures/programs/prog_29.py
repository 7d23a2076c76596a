"""Analysis script.

import fake_docstring_module
"""
from __future__ import annotations
import subprocess
def load():
    import random
    return None
from pickle import (
    alpha,
    beta,
)
def load():
    import datetime as m8
    return None
from . import sibling
# import commented_out_module
TEMPLATE = 'import quoted_module'
NOTE = """
from multiline_string import thing
"""
x = 1  # from inline_comment import y
print('done')
