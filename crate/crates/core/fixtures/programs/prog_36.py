"""Analysis script.

import fake_docstring_module
"""
from __future__ import annotations
import seaborn
def load():
    import ase.io as m95
    return None
import attr
import torch.nn; import functools as m49
import mne
from . import sibling
from .helpers import tool
# import commented_out_module
TEMPLATE = 'import quoted_module'
NOTE = """
from multiline_string import thing
"""
x = 1  # from inline_comment import y
print('done')
