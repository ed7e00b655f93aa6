"""Generalized Burau matrices of string links via random walks on diagrams."""

from .diagram import (
    SingularStringLink,
    StringLinkDiagram,
    build_diagram,
    compose,
    identity,
    make_singular,
    mirror_vertical,
    parse_braid,
    parse_singular_tangle,
    parse_tangle,
    power,
    render_tangle,
    split_union,
)
from .engine import (
    build_system,
    burau_at,
    burau_matrix,
    classical_burau,
    enumerate_paths_mod_h,
    primitivity_index,
    reachability,
    series_burau,
    solve_exact,
)
from .errors import BurauError, DiagramError, DomainError, MoveError, TangleSyntaxError
from .finitetype import bk_coefficient, resolve, vassiliev_value
from .matrices import BurauMatrix, SeriesMatrix
from .moves import R1Delete, R1Insert, R2Delete, R2Insert, R3Slide, apply_move
from .ratfun import HSeries, LaurentPoly, RatFun, eval_at, expand_h, kleene_star

__version__ = "0.1.0"
