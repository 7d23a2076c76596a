"""Analysis script.

import fake_docstring_module
"""
from __future__ import annotations
import scanpy as m3
try:
    import common
except ImportError:
    pass
try:
    import csv
except ImportError:
    pass
import pymatgen.core; import subprocess as m72
import time
import nibabel; import ase.io as m35
import statsmodels.api
# import commented_out_module
TEMPLATE = 'import quoted_module'
NOTE = """
from multiline_string import thing
"""
x = 1  # from inline_comment import y
print('done')
