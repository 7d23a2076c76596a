"""Analysis script.

import fake_docstring_module
"""
from __future__ import annotations
from matplotlib.pyplot import (
    alpha,
    beta,
)
from sys import (
    alpha,
    beta,
)
import collections; import math as m95
from . import sibling
# import commented_out_module
TEMPLATE = 'import quoted_module'
NOTE = """
from multiline_string import thing
"""
x = 1  # from inline_comment import y
print('done')
