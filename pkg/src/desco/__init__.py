"""Supervisory control of discrete-event systems under partial observation."""

from .automata import (DUMP, EventTable, Generator, LanguageRelation, Relation, accessible,
                       complete_with_dump, coreachable, is_nonblocking, isomorphic,
                       language_equal, language_relation, minimize, reachable, restrict,
                       sync, sync_product, trim)
from .control import (ControlContext, is_controllable, is_normal, supcon, supnorm,
                      supnorm_con)
from .errors import (AlphabetMismatch, Blocking, DescoError, DuplicateTransition,
                     GenSyntaxError, NoInitialState, ParseError, PreconditionViolated,
                     UnknownEvent, UnknownReference)
from .io import load, parse, save, serialize, to_dot
from .pipeline import PipelineReport, suprelobs_con, verify_supervisor
from .projection import (check_assumption1, check_assumption2, is_lm_observer,
                         normalize_assumption1, normalize_assumption2, observer,
                         project_string, uncertainty_set)
from .relobs import (ConsistencyViolation, RelobsWitness, SynthesisReport, TSet,
                     check_observability, check_relative_observability, compute_T_family,
                     consistency_check, suprelobs, suprelobs_step)

__version__ = "0.1.0"
