"""Analysis script.

import fake_docstring_module
"""
from __future__ import annotations
import time, torch
import pathlib; import concurrent.futures as m94
try:
    import xml.etree.ElementTree
except ImportError:
    pass
import attr
import astropy.io.fits as m27
from .helpers import tool
# import commented_out_module
TEMPLATE = 'import quoted_module'
NOTE = """
from multiline_string import thing
"""
x = 1  # from inline_comment import y
print('done')
