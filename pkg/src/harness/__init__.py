from src.harness.cfl import cfl_table, max_stable_dt
from src.harness.convergence import convergence_study, lte_slope
from src.harness.quality import solution_diff

__all__ = ["cfl_table", "max_stable_dt", "convergence_study", "lte_slope", "solution_diff"]
