"""Analysis script.

import fake_docstring_module
"""
from __future__ import annotations
import collections
import glob; import ase.io as m50
import bs4; import urllib.request as m30
import random
from . import sibling
# import commented_out_module
TEMPLATE = 'import quoted_module'
NOTE = """
from multiline_string import thing
"""
x = 1  # from inline_comment import y
print('done')
