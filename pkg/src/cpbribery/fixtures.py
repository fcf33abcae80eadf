"""The three-voter meal profile (main dish, side dish, drink) used throughout the tests."""

from .cpnet import IssueSet, Profile, Voter, make_net

MEAL_ISSUES = IssueSet(
    ("main", "side", "drink"),
    (("fish", "meat"), ("rice", "chips"), ("wine", "beer")),
)
MAIN, SIDE, DRINK = 0, 1, 2


def meal_candidate(main: str, side: str, drink: str) -> tuple[int, int, int]:
    return (
        MEAL_ISSUES.bit_of(MAIN, main),
        MEAL_ISSUES.bit_of(SIDE, side),
        MEAL_ISSUES.bit_of(DRINK, drink),
    )


def meal_profile() -> Profile:
    alice = make_net(
        MEAL_ISSUES,
        [((), (1,)), ((), (1,)), ((MAIN,), (0, 1))],
        order=(MAIN, DRINK, SIDE),
    )
    bob = make_net(
        MEAL_ISSUES,
        [((), (1,)), ((), (0,)), ((MAIN, SIDE), (0, 0, 0, 1))],
        order=(MAIN, SIDE, DRINK),
    )
    charlie = make_net(
        MEAL_ISSUES,
        [((SIDE,), (1, 0)), ((), (0,)), ((SIDE,), (0, 1))],
        order=(SIDE, DRINK, MAIN),
    )
    return Profile(
        MEAL_ISSUES,
        (
            Voter(alice, name="Alice"),
            Voter(bob, name="Bob"),
            Voter(charlie, name="Charlie"),
        ),
    )
