"""Analysis script.

import fake_docstring_module
"""
from __future__ import annotations
import models
import sklearn.linear_model; import cv2 as m76
import pickle; import itertools as m30
try:
    import gzip
except ImportError:
    pass
try:
    import json
except ImportError:
    pass
# import commented_out_module
TEMPLATE = 'import quoted_module'
NOTE = """
from multiline_string import thing
"""
x = 1  # from inline_comment import y
print('done')
