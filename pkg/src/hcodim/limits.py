"""Resource guardrails shared by the enumeration-heavy modules."""
from dataclasses import dataclass


class BudgetExceeded(RuntimeError):
    pass


class CrossCheckMismatch(AssertionError):
    """Two independent computations disagreed; always a bug."""


@dataclass(frozen=True)
class Budget:
    max_n_assoc: int = 6
    max_n_plain: int = 5  # nonassociative, undecorated
    max_n_decorated: int = 4
    max_n_assoc_decorated: int = 5
    max_rows: int = 200_000
    max_symmetrizer_terms: int = 100_000
    override: bool = False

    def check_degree(self, n: int, *, assoc: bool, decorated: bool) -> None:
        if self.override:
            return
        if assoc and decorated:
            cap = self.max_n_assoc_decorated
        elif assoc:
            cap = self.max_n_assoc
        elif decorated:
            cap = self.max_n_decorated
        else:
            cap = self.max_n_plain
        if n > cap:
            kind = "associative" if assoc else ("decorated" if decorated else "nonassociative")
            raise BudgetExceeded(f"n={n} exceeds the {kind} cap {cap}; pass --budget-override to proceed")

    def check_rows(self, rows: int) -> None:
        if not self.override and rows > self.max_rows:
            raise BudgetExceeded(f"{rows} rows exceeds the cap {self.max_rows}")


DEFAULT_BUDGET = Budget()
