from .cnf import CnfInstance, cnf, parse_dimacs, sat_oracle, to_dimacs
from .gadgets import GadgetGraph, check_gadget_invariants, sat_to_vcp
from .vcp import PackingResult, vcp_oracle
