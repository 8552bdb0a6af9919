"""hotk: a workbench for standard and cumulative monadic type theories.

Formation checking, abbreviation expansion, theory translations, finite
model construction and evaluation, natural-deduction proof checking, and
the level-theory constructions, all at desk scale.
"""

__version__ = "0.1.0"
