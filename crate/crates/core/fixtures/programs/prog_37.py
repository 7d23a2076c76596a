"""Analysis script.

import fake_docstring_module
"""
from __future__ import annotations
import Bio.SeqIO; import common as m33
import pickle
from jax.numpy import (
    alpha,
    beta,
)
import PIL
try:
    import xgboost
except ImportError:
    pass
import csv
from glob import (
    alpha,
    beta,
)
try:
    import random
except ImportError:
    pass
from . import sibling
# import commented_out_module
TEMPLATE = 'import quoted_module'
NOTE = """
from multiline_string import thing
"""
x = 1  # from inline_comment import y
print('done')
