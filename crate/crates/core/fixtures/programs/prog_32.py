"""Analysis script.

import fake_docstring_module
"""
from __future__ import annotations
import time, pickle
try:
    import scanpy
except ImportError:
    pass
import random
import netCDF4; import models as m68
def load():
    import sklearn.linear_model
    return None
try:
    import shutil
except ImportError:
    pass
from .helpers import tool
# import commented_out_module
TEMPLATE = 'import quoted_module'
NOTE = """
from multiline_string import thing
"""
x = 1  # from inline_comment import y
print('done')
