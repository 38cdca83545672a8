import os
from dotenv import load_dotenv

# Carga inicial de variables de entorno (dotenv).
load_dotenv()

LOG_LEVEL = os.getenv("FBRK_LOG_LEVEL", "INFO").upper()
# auto: color solo si stderr es una terminal; always / never lo fuerzan.
LOG_COLOR = os.getenv("FBRK_LOG_COLOR", "auto").lower()

# Directorio alternativo con los YAML de configuración.
CONFIG_DIR = os.getenv("FBRK_CONFIG_DIR")

# Límite de ejecuciones paralelas del harness y del optimizador.
try:
    FBRK_THREADS = max(1, int(os.getenv("FBRK_THREADS", "1")))
except ValueError:
    FBRK_THREADS = 1
    print("WARNING: FBRK_THREADS no es un entero. Usando 1 hilo.")

# Códigos de salida del CLI.
EXIT_OK = 0
EXIT_NUMERICAL_FAILURE = 1
EXIT_USAGE = 2

# Tabla de pesos optimizados: (|U|, coste, (β1, β2, β3), νmax publicado).
TABLE1_ROWS = (
    (0.00, "C1", (0.500, 0.500, 0.344), 1.767),
    (0.00, "C2", (0.516, 0.532, 0.331), 1.804),
    (0.05, "C1", (0.531, 0.531, 0.313), 1.319),
    (0.15, "C1", (0.359, 0.578, 0.234), 1.025),
    (0.25, "C1", (0.656, 0.938, 0.188), 0.853),
)

# Pesos con los que FB-RK(3,2) se reduce (aproximadamente) a RK3.
RK3_REDUCTION_WEIGHTS = (0.0, 2.0 / 3.0, 0.0)

# Pesos "robustos" usados por defecto en los experimentos no lineales.
ROBUST_WEIGHTS = (0.531, 0.531, 0.313)
