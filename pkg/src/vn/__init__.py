"""Análisis de von Neumann de FB-RK(3,2) sobre las ecuaciones de aguas someras linealizadas."""
