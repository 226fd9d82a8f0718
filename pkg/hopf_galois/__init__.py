"""
hopf-galois: exact computations on finite-dimensional Hopf algebras, their comodule algebras and I-Galois objects
"""

__program_name__ = 'hopf-galois'
__version__ = '0.1.0'
__author__ = 'Pierre Beaujean'
__maintainer__ = 'Pierre Beaujean'
__email__ = 'pierre.beaujean@unamur.be'
__status__ = 'Development'
