"""Analysis script.

import fake_docstring_module
"""
from __future__ import annotations
import re
def load():
    import pandas as m80
    return None
import netCDF4; import hdbscan as m66
import tqdm
try:
    import matplotlib.pyplot
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
