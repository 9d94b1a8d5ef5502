# ================================
# Integration Tests
# ================================
# Tests de integración para flujos completos.
# ================================
