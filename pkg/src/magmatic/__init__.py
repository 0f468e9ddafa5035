"""Free magmas, the replacement relation on composite states, and the
magmatic product of a family of finite magmas."""

from .algebra import (
    Classification,
    FiniteMagma,
    apply,
    classify,
    const0,
    cyclic,
    eval_universal,
    is_morphism,
    load_generator_map,
    load_table,
    parse_generator_map,
    parse_table,
)
from .errors import (
    ArityMismatch,
    CapTooSmall,
    IndexOutOfRange,
    InvalidStep,
    LimitExceeded,
    MagmaError,
    NotComposite,
    ParseError,
    TableFormatError,
    UnmappedAtom,
)
from .product import (
    ProductSpace,
    SplitTable,
    build_split_table,
    coordinate_splits,
    parse_components,
    space_of,
)
from .quotient import (
    ClassHandle,
    Equivalent,
    ExplorationCaps,
    MagmaticProduct,
    NotEquivalentCertified,
    PathStep,
    Unknown,
    Witness,
    WitnessUnknown,
    check_congruence,
    class_of,
    delta,
    embed,
    equivalent,
    magmatic_product,
    self_magmatic,
    witness_search,
)
from .rewrite import (
    Grouping,
    ReplacementStep,
    apply_replacement,
    expand_leaf,
    predecessors,
    replacements_at,
    successors,
    verify_step,
)
from .term import (
    Atom,
    Leaf,
    Pair,
    Symbol,
    Term,
    TupleAtom,
    atom,
    atom_term,
    catalan,
    enumerate_shapes,
    fiber,
    format_term,
    graft,
    leafcount,
    leaves,
    parse,
    shape_of,
    top_split,
)

__version__ = "0.1.0"
