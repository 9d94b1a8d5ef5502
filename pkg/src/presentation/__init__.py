# ================================
# Presentation Layer
# ================================
# Expone la aplicación por línea de comandos.
#
# Componentes:
# - cli: Parser argparse y manejadores de comandos
# - schemas: Validación pydantic de archivos de configuración
# - dependencies: Contenedor de inyección de dependencias
# ================================
