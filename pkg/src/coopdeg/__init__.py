"""Exact solution concepts for cooperative games, with algorithms whose cost
grows with the dependency degree ``d`` or the supermodular degree ``p``
rather than with the number of players."""

__version__ = "0.1.0"

from .decomposition import (
    NiceTreeDecomposition,
    TreeDecomposition,
    check_nice,
    clique_tree,
    elimination_tree_decomposition,
    is_chordal,
    make_nice,
    validate_td,
)
from .dependency import (
    DependencyGraph,
    Flavor,
    degrees,
    dependency_graph,
    depends,
    depends_isg,
    depends_wvg,
    is_dummy,
    minimal_winning_coalitions,
    positively_depends,
    positively_depends_simple,
    veto_players,
)
from .errors import (
    DomainError,
    EmptyLeastCore,
    GameError,
    InvariantViolation,
    OracleMismatch,
    SizeGuardError,
    ValidationError,
)
from .game import (
    ExplicitGame,
    Game,
    HypergraphGame,
    InducedSubgraphGame,
    MwcListGame,
    WeightedVotingGame,
    check_monotone,
    check_simple,
    coalition,
    members,
    relaxed_size_guards,
)
from .gamefile import parse_game, serialize_game
from .stability import (
    LeastCoreResult,
    core_simple,
    excess,
    least_core_bruteforce,
    least_core_simple,
    separation_oracle_simple,
)
from .structures import (
    CoalitionStructure,
    brute_optimal_cs,
    dp_optimal_cs,
    subset_dp_optimal_cs,
    wvg_optimal_cs,
)
from .values import banzhaf_fpt, banzhaf_naive, shapley_fpt, shapley_naive
