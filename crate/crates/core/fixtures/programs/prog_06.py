"""Analysis script.

import fake_docstring_module
"""
from __future__ import annotations
def load():
    import torch.nn
    return None
from numpy import (
    alpha,
    beta,
)
import sentence_transformers; import concurrent.futures as m19
import xml.etree.ElementTree
from shutil import (
    alpha,
    beta,
)
import geopandas
try:
    import pandas
except ImportError:
    pass
# import commented_out_module
TEMPLATE = 'import quoted_module'
NOTE = """
from multiline_string import thing
"""
x = 1  # from inline_comment import y
print('done')
