"""Analysis script.

import fake_docstring_module
"""
from __future__ import annotations
import statistics as m11
import itertools
import rdkit.Chem; import joblib as m85
import common, pandas
# import commented_out_module
TEMPLATE = 'import quoted_module'
NOTE = """
from multiline_string import thing
"""
x = 1  # from inline_comment import y
print('done')
