"""Exception types shared across the toolkit."""


class SynthesisError(Exception):
    """Base class for all binmachine errors."""


class IllegalCharacter(SynthesisError):
    def __init__(self, char: str, position: int):
        super().__init__(f"illegal character {char!r} at position {position}")
        self.char = char
        self.position = position


class EmptySequence(SynthesisError):
    def __init__(self):
        super().__init__("sequence contains no bits")


class InvalidParallelization(SynthesisError):
    def __init__(self, p: int, n: int):
        super().__init__(f"degree of parallelization p={p} outside [1, {n}]")
        self.p = p
        self.n = n


class PermutationTooShort(SynthesisError):
    def __init__(self, have: int, need: int):
        super().__init__(f"permutation yields {have} distinct values, need {need}")
        self.have = have
        self.need = need


class DegenerateSequence(SynthesisError):
    def __init__(self, r: int):
        super().__init__(f"sequence produces only {r} state(s); need at least 2")
        self.r = r


class IncompleteInput(SynthesisError):
    def __init__(self, missing: int):
        super().__init__(f"function is missing {missing} care row(s); a complete table is required")
        self.missing = missing


class InconsistentSpec(SynthesisError):
    def __init__(self, name: int, point: int):
        super().__init__(f"function f{name}: conflicting outputs demanded at input point {point}")
        self.name = name
        self.point = point


class WidthMismatch(SynthesisError):
    def __init__(self, got: int, expected: int):
        super().__init__(f"width mismatch: got {got}, expected {expected}")
        self.got = got
        self.expected = expected


class VerificationFailed(SynthesisError):
    def __init__(self, counterexample):
        super().__init__(f"circuit violates its care behaviour; counterexample {counterexample}")
        self.counterexample = counterexample


class BudgetUnsatisfiable(SynthesisError):
    def __init__(self, budget: int, smallest: int):
        super().__init__(
            f"gate budget {budget} cannot be met; the cheapest single pattern needs {smallest}"
        )
        self.budget = budget
        self.smallest = smallest
