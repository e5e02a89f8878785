"""Kernels by H-walks in arc-coloured digraphs."""
from .digraph import (
    CanonicalForm,
    ColouredInstance,
    Digraph,
    ParseError,
    PartitionInvalid,
    Pattern,
    canonicalize,
    complement,
    contract,
    expand,
    format_instance,
    format_pattern,
    parse_instance,
    parse_pattern,
)
from .hwalk import ReachRelation, build_product, h_reach, witness_walk
from .kernel import check_kernel, enumerate_h_kernels, find_h_kernel
from .recognizer import Verdict, bicomplete_split, recognize, two_k1_split
from .reductions import P2Transform, p2_transform, pullback_kernel
from .search import SearchBounds, classify_order, falsify

__all__ = [
    "CanonicalForm", "ColouredInstance", "Digraph", "ParseError", "PartitionInvalid", "Pattern",
    "canonicalize", "complement", "contract", "expand", "format_instance", "format_pattern",
    "parse_instance", "parse_pattern", "ReachRelation", "build_product", "h_reach", "witness_walk",
    "check_kernel", "enumerate_h_kernels", "find_h_kernel", "Verdict", "bicomplete_split",
    "recognize", "two_k1_split", "P2Transform", "p2_transform", "pullback_kernel",
    "SearchBounds", "classify_order", "falsify",
]
