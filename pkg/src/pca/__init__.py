"""Dictionary-based compression of Prolog programs."""

from .codec import compress, decompress
from .dictionary import PCA0, PCA2, Dictionary, DictEntry, build
from .errors import PCAError, PrologSyntaxError
from .normalizer import NormalizedProgram, nf0_text, normalize, normalize_source, var_name
from .ops import OpTable
from .reader import read_program, read_terms, tokenize
from .terms import Atom, Compound, Float, Int, Var
from .writer import write_program, write_term

__all__ = [
    "Atom", "Compound", "DictEntry", "Dictionary", "Float", "Int", "NormalizedProgram",
    "OpTable", "PCA0", "PCA2", "PCAError", "PrologSyntaxError", "Var", "build", "compress",
    "decompress", "nf0_text", "normalize", "normalize_source", "read_program", "read_terms",
    "tokenize", "var_name", "write_program", "write_term",
]
