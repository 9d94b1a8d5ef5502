# ================================
# Application Layer
# ================================
# Orquesta los casos de uso (uno por comando de la CLI).
# Depende del dominio y recibe los adaptadores por inyección.
#
# Componentes:
# - use_cases: Acciones del sistema
# - dto: Data Transfer Objects (configuración resuelta y resultados)
# ================================
