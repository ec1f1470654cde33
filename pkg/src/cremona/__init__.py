"""Exact computations with plane Cremona maps preserving dx∧dy/(xy).

The package covers polynomial arithmetic over the rationals, infinitely
near base points, birational maps and 2-forms, and a solver for the word
problem in the group generated by C, I and P.
"""

__version__ = "0.1.0"

from .algebra import Poly, X, Y, Z, gcd, exact_divide, substitute  # noqa: E402
from .errors import (  # noqa: E402
    CremonaError,
    DegreeCapExceeded,
    DegreeMismatch,
    InternalCheckError,
    InvalidConfiguration,
    IrrationalSingularLocus,
    NotDivisible,
    UnaccountedBasePoint,
    WordSyntaxError,
)
from .geometry import (  # noqa: E402
    InfinitelyNearPoint,
    LinearSystem,
    ProjectivePoint,
    base_points,
    collinear,
    multiplicity,
)
from .maps import (  # noqa: E402
    BirationalMap,
    C,
    I,
    P,
    S,
    T,
    compose,
    decompose_quadratic_symplectic,
    equal,
    inverse,
    named_point,
    quadratic_from_points,
    symplectic_automorphism_decompose,
)
from .forms import (  # noqa: E402
    OMEGA0,
    RationalTwoForm,
    blowup_form_multiplicity,
    classify_normal_cubic,
    is_symplectic,
    preserves_divisor,
    pushforward,
)
from .words import (  # noqa: E402
    QuadraticWord,
    Word,
    conjugate_swap,
    eval_word,
    find_quadratic_word,
    invert,
    parse,
    simplify_pair,
    to_quadratic_words,
)
from .reduce import is_identity, reduce  # noqa: E402

__all__ = [
    "__version__",
    "Poly",
    "X",
    "Y",
    "Z",
    "gcd",
    "exact_divide",
    "substitute",
    "CremonaError",
    "DegreeCapExceeded",
    "DegreeMismatch",
    "InternalCheckError",
    "InvalidConfiguration",
    "IrrationalSingularLocus",
    "NotDivisible",
    "UnaccountedBasePoint",
    "WordSyntaxError",
    "InfinitelyNearPoint",
    "LinearSystem",
    "ProjectivePoint",
    "base_points",
    "collinear",
    "multiplicity",
    "BirationalMap",
    "C",
    "I",
    "P",
    "S",
    "T",
    "compose",
    "decompose_quadratic_symplectic",
    "equal",
    "inverse",
    "named_point",
    "quadratic_from_points",
    "symplectic_automorphism_decompose",
    "OMEGA0",
    "RationalTwoForm",
    "blowup_form_multiplicity",
    "classify_normal_cubic",
    "is_symplectic",
    "preserves_divisor",
    "pushforward",
    "QuadraticWord",
    "Word",
    "conjugate_swap",
    "eval_word",
    "find_quadratic_word",
    "invert",
    "parse",
    "simplify_pair",
    "to_quadratic_words",
    "is_identity",
    "reduce",
]
