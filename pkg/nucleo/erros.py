"""
Módulo: Erros
Hierarquia única de exceções do kit de geometria.

Todas derivam de ValueError, então quem já captura ValueError continua
funcionando. A CLI traduz ErroEntrada em código de saída 2 e qualquer
outra ErroGeometria em código 3.
"""


class ErroGeometria(ValueError):
    """Base de todos os erros do pacote."""


# ============================================================
# Entrada rejeitada
# ============================================================

class ErroEntrada(ErroGeometria):
    """Dados de entrada inválidos (métrica não positiva, Jacobi, arquivo malformado)."""


class ErroParametro(ErroEntrada):
    """Parâmetro escalar fora do domínio (m = 0, t <= 0, n < 3...)."""


# ============================================================
# Pré-condições matemáticas
# ============================================================

class ErroPrecondicao(ErroGeometria):
    """Uma hipótese matemática da operação não vale para a entrada."""


class ErroNaoKilling(ErroPrecondicao):
    pass


class ErroSolucaoTrivial(ErroPrecondicao):
    """X = 0: a solução é Einstein (trivial)."""


class ErroNaoQuasiEinstein(ErroPrecondicao):
    pass


class ErroNaoReescalavel(ErroPrecondicao):
    """λ + |X|²/m <= 0: caso produto, não há normalização sasakiana."""


class ErroFibracaoInvalida(ErroPrecondicao):
    pass


class ErroFibraNaoGeodesica(ErroPrecondicao):
    pass


class ErroHipoteseVertical(ErroPrecondicao):
    """X não é tangente às fibras."""


class ErroEstruturaDegenerada(ErroPrecondicao):
    pass


class ErroDimensao(ErroPrecondicao):
    pass


class ErroSemFamilia(ErroPrecondicao):
    """Nenhuma solução âncora admite variação canônica."""


# ============================================================
# Outros
# ============================================================

class ErroPlanoDegenerado(ErroGeometria):
    pass


class ErroInvariante(ErroGeometria):
    """Uma pós-condição verificada numericamente falhou."""
