# ================================
# Unit Tests
# ================================
# Tests unitarios para componentes individuales.
# ================================
