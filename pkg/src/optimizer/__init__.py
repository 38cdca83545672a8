from src.optimizer.models import CostKind, CostSpec, OptimizationReport, Table1Verdict, TraceEntry
from src.optimizer.search import optimize
from src.optimizer.table1 import TABLE1, evaluate_table1, rk3_reduction

__all__ = [
    "CostKind",
    "CostSpec",
    "OptimizationReport",
    "Table1Verdict",
    "TraceEntry",
    "optimize",
    "TABLE1",
    "evaluate_table1",
    "rk3_reduction",
]
