"""Winner-take-all computation contests: exact winning probabilities, the
pool-choosing game, rich-get-richer dynamics and large-n asymptotics."""

from .asymptotics import DecayFit, GapCurve, fit_decay_slope, gap_curve
from .contest import (
    DEFAULT_QUADRATURE,
    ContestSpec,
    DiscreteContestSpec,
    Method,
    PolyFactors,
    PowerProfile,
    QuadratureConfig,
    WinProbabilities,
    contest,
    efficiency,
    two_player_closed_form,
    win_probabilities,
)
from .dynamics import DynamicsConfig, DynamicsTrace, dominance_metrics, run, step_expected
from .errors import (
    ContestError,
    InvalidInputError,
    NumericalFailureError,
    RefusedAnalysisError,
    UnsupportedSizeError,
)
from .exact import win_probabilities_exact
from .pooling import (
    INDEPENDENT,
    EquilibriumReport,
    PoolPartition,
    UtilityVector,
    best_response,
    check_merge_lemma,
    check_superadditivity,
    is_nash,
    partition_from_actions,
    pool_utilities,
    predicted_equilibrium,
    utilities_for_actions,
)
from .sampling import (
    McConfig,
    McEstimate,
    sample_first_hit_continuous,
    sample_first_hit_discrete,
    simplex_section_shares,
    simulate_contest_continuous,
    simulate_contest_discrete,
)

__version__ = "0.1.0"
