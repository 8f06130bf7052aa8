class PauliNMError(Exception):
    pass


class InvalidState(PauliNMError, ValueError):
    pass


class NotHermitian(PauliNMError, ValueError):
    pass


class OutOfRange(PauliNMError, ValueError):
    def __init__(self, value, lo=None, hi=None, what="p"):
        self.value = value
        msg = f"{what}={value!r} outside valid range"
        if lo is not None:
            msg += f" [{lo}, {hi}]"
        super().__init__(msg)


class NotCompletelyPositive(PauliNMError, ValueError):
    pass


class SingularPoint(PauliNMError, ArithmeticError):
    """Some map eigenvalue vanishes: the generator is undefined here."""

    def __init__(self, at, components=()):
        self.at = at
        self.components = tuple(components)
        super().__init__(f"generator singular at {at!r} (components {self.components})")


class NonInvertibleAt(PauliNMError, ArithmeticError):
    def __init__(self, s):
        self.s = s
        super().__init__(f"map is not invertible at s={s!r}; no intermediate map exists")


class SingularAt(SingularPoint):
    pass
