"""Predictive two-level tree keyboard engine.

Seventy-two characters are typed through ten commands: level 1 offers
nine groups of eight characters plus DELETE, level 2 the eight characters
of the chosen group plus GO BACK and DELETE. A fixed-order context model
trained on a corpus reorders the level-1 groups so probable next
characters sit on the earliest buttons. The package bundles the model,
the layout generator, the session state machine, an optimal-user
simulator with benchmark harness, typing metrics (speed and information
transfer rates), an HTTP session gateway, and a CLI.
"""

__version__ = "0.1.0"

from .charset import (
    ALPHABET_SIZE,
    END_OF_TEXT,
    CharacterSet,
    CharsetError,
    Corpus,
    DuplicateSymbolError,
    WrongCountError,
    default_charset,
    load_charset,
    normalize,
)
from .layout import (
    DELETE,
    DELETE_POSITION,
    GO_BACK,
    GO_BACK_POSITION,
    CommandLabel,
    InvalidCommandForTransitionError,
    Layout,
    LayoutError,
    level1_layout,
    level2_layout,
    next_layout,
)
from .metrics import (
    ERROR_FREE_ITR_RATIO,
    M_COMMANDS,
    M_LETTERS,
    DegenerateAlphabetError,
    EmptyLogError,
    MetricsReport,
    ZeroDurationError,
    itr,
    report_from_log,
    report_from_session,
)
from .ppm import (
    MODEL_FORMAT,
    BadContextLengthError,
    CorruptModelError,
    FormatVersionMismatchError,
    ModelError,
    OrderNegativeError,
    PredModel,
    frequency_ranking,
    load_model,
    model_from_json,
    model_to_json,
    predict,
    save_model,
    train,
)
from .session import (
    NoTargetError,
    SessionError,
    SessionEvent,
    SessionState,
    TargetNotNormalizedError,
    apply_command,
    is_complete,
    last_five,
    new_session,
    parse_transcript,
    read_transcript,
    replay,
    transcript_lines,
    write_transcript,
)
from .simulate import (
    BenchmarkRow,
    CharacterNotInCharsetError,
    CorpusTooSmallError,
    NotEnoughTextError,
    SimReport,
    SimulationError,
    condition_label,
    run_benchmark,
    simulate_deletion,
    simulate_optimal,
    write_benchmark_csv,
)

__all__ = [name for name in dir() if not name.startswith("_")]
