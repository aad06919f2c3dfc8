"""Kernel selection: the compiled extension when it imports, else pure Python."""
try:
    from . import _kernels as _impl
except ImportError:  # extension not built
    from . import _pykernels as _impl

BACKEND = _impl.BACKEND
ScriptVoter = _impl.ScriptVoter
levenshtein = _impl.levenshtein
lcs_length = _impl.lcs_length
fnv1a_64 = _impl.fnv1a_64

__all__ = ["BACKEND", "ScriptVoter", "levenshtein", "lcs_length", "fnv1a_64"]
