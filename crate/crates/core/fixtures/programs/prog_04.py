"""Analysis script.

import fake_docstring_module
"""
from __future__ import annotations
import netCDF4
import hdbscan; import argparse as m48
def load():
    import rdkit.Chem as m26
    return None
# import commented_out_module
TEMPLATE = 'import quoted_module'
NOTE = """
from multiline_string import thing
"""
x = 1  # from inline_comment import y
print('done')
