"""Concrete families, printed tables and replays of the classification."""

from .catalog import CATALOG_LABELS, CatalogEntry, classified_algebra
from .families import C3, FAMILIES, FamilySpec, a2prime, family_form, sym
from .fields import gamma_class, matrix_class, same_gamma_class, same_matrix_class, squarefree_part
from .identities import adj, adjugate_congruence_check, cube_root_witness, det_twisted_congruence_check
from .kernels import GARBLED_READINGS, KERNEL_SPANS, combination
from .replay import TAGS, Check, ReplayReport, replay_theorem
