"""Destructive bribery over profiles of binary CP-nets."""

from .cpnet import CPNet, CPTable, IssueSet, Profile, Voter, make_net
from .voting import OP, OV, SM, VotingRule, winners
from .bribery import BriberyInstance, FlipPlan, apply_plan, bribery_succeeds, plan_cost
from .oracle import Limits, LimitsExceeded, SolveResult, brute_force_solve

__all__ = [
    "CPNet",
    "CPTable",
    "IssueSet",
    "Profile",
    "Voter",
    "make_net",
    "OP",
    "OV",
    "SM",
    "VotingRule",
    "winners",
    "BriberyInstance",
    "FlipPlan",
    "apply_plan",
    "bribery_succeeds",
    "plan_cost",
    "Limits",
    "LimitsExceeded",
    "SolveResult",
    "brute_force_solve",
]
