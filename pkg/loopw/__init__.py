"""
LoopW - Compilador verificador para el lenguaje imperativo Loop^ω.

Incluye parser, motor de índices, typechecker dependiente (ID / ID^c),
lógica de Hoare embebida, traducción a un núcleo funcional e intérprete.
"""

__version__ = '1.0.0'
