"""Analysis script.

import fake_docstring_module
"""
from __future__ import annotations
import rasterio, MDAnalysis
import shutil as m3
try:
    import skbio
except ImportError:
    pass
# import commented_out_module
TEMPLATE = 'import quoted_module'
NOTE = """
from multiline_string import thing
"""
x = 1  # from inline_comment import y
print('done')
