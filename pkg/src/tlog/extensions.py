"""Submodels, traces, the classifier and the extension constructions in one namespace."""
from tlog.submodel import SubmodelSpec, DownSet, TraceResult, trace_set, check_witness, structure_problems
from tlog.classify import (
    Step, ExtensionReport, classify_simple_extension, primitive_strip, submodel_contains,
    AclSpan, acl_generate, in_acl, same_cut, separate, same_type_over,
)
from tlog.classcut import ClassCutExtension, ClassCutElement, HypothesisError, adjoin_class_cut, tournant_pair
from tlog.pseudolimit import (
    PseudolimitSpec, PseudolimitExtension, StabilizationError, PcReport, adjoin_pseudolimit, pc_check,
    pseudolimit_trace, harmonic_example, copy_chain_example,
)
from tlog.embedding import Embedding, EmbeddingError, embed_universal

__all__ = [
    "SubmodelSpec", "DownSet", "TraceResult", "trace_set", "check_witness", "structure_problems",
    "Step", "ExtensionReport", "classify_simple_extension", "primitive_strip", "submodel_contains",
    "AclSpan", "acl_generate", "in_acl", "same_cut", "separate", "same_type_over",
    "ClassCutExtension", "ClassCutElement", "HypothesisError", "adjoin_class_cut", "tournant_pair",
    "PseudolimitSpec", "PseudolimitExtension", "StabilizationError", "PcReport", "adjoin_pseudolimit",
    "pc_check", "pseudolimit_trace", "harmonic_example", "copy_chain_example",
    "Embedding", "EmbeddingError", "embed_universal",
]
