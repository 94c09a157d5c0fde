"""Pop-stack sorting machines, permutation classes and the PS generating function."""

from ._core import (
    BoundError,
    IllegalMoveError,
    SeriesError,
    antichain_element,
    avoids_all,
    complement,
    compute_basis,
    contains,
    count_members,
    count_occurrences,
    delete_entry,
    direct_sum,
    div_contains,
    dual,
    exists_division_avoiding,
    in_antichain_class,
    inflate,
    inverse,
    is_simple,
    is_sortable,
    machine_kinds,
    parallel_alternation,
    parse,
    ps_closed_form,
    ps_fixed_point,
    replay,
    reverse,
    run_cli,
    simples_in_class,
    skew_sum,
    sorting_witness,
    structural_member,
    substitution_decompose,
    verify_antichain,
    verify_basis_element,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
