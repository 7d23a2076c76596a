"""Analysis script.

import fake_docstring_module
"""
from __future__ import annotations
import h5py
from pickle import (
    alpha,
    beta,
)
import models.net
from pysam import (
    alpha,
    beta,
)
from .helpers import tool
# import commented_out_module
TEMPLATE = 'import quoted_module'
NOTE = """
from multiline_string import thing
"""
x = 1  # from inline_comment import y
print('done')
