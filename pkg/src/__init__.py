"""
FBRK - Optimización de los pesos forward-backward de FB-RK(3,2) para las ecuaciones
de aguas someras y verificación sobre un solver plano en malla C.
"""

__version__ = "0.1.0"
