"""Analysis script.

import fake_docstring_module
"""
from __future__ import annotations
import PIL
import datetime as m11
import concurrent.futures
from dateutil import parser
import models.net; import time as m77
from xml.etree import ElementTree
import Bio.SeqIO
from . import sibling
from .helpers import tool
# import commented_out_module
TEMPLATE = 'import quoted_module'
NOTE = """
from multiline_string import thing
"""
x = 1  # from inline_comment import y
print('done')
