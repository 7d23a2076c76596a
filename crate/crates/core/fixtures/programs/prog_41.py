"""Analysis script.

import fake_docstring_module
"""
from __future__ import annotations
try:
    import datetime
except ImportError:
    pass
import glob; import functools as m89
def load():
    from dateutil import parser
    return None
from . import sibling
# import commented_out_module
TEMPLATE = 'import quoted_module'
NOTE = """
from multiline_string import thing
"""
x = 1  # from inline_comment import y
print('done')
