# ================================
# Source Package
# ================================
# Paquete raíz. El punto de entrada de la CLI vive en src.main.
# ================================

__version__ = "1.0.0"
