"""
Módulo: Referencial
Tipos básicos da geometria de referenciais: constantes de estrutura,
matriz de Gram de uma métrica invariante e campos invariantes.

Todos os tipos são imutáveis (arrays somente leitura) e validam suas
invariantes na construção.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence, Union

import numpy as np
import scipy.linalg

from nucleo.erros import ErroEntrada
from nucleo.politica import POLITICA_PADRAO


def _congelar(array: np.ndarray) -> np.ndarray:
    copia = np.array(array, dtype=float, copy=True)
    copia.setflags(write=False)
    return copia


# ============================================================
# Referencial (constantes de estrutura)
# ============================================================

@dataclass(frozen=True, eq=False)
class Referencial:
    """
    Referencial invariante e_1..e_d com [e_i, e_j] = Σ_k c[i][j][k] e_k.

    Internamente os índices são 0-based; os arquivos de problema usam 1-based.
    """

    dim: int
    colchetes: np.ndarray
    tolerancia: float = field(default=POLITICA_PADRAO.validacao, repr=False)

    def __post_init__(self):
        if not isinstance(self.dim, (int, np.integer)) or self.dim < 1:
            raise ErroEntrada(f"❌ Dimensão inválida: {self.dim}")

        c = np.asarray(self.colchetes, dtype=float)
        if c.shape != (self.dim,) * 3:
            raise ErroEntrada(
                f"❌ Colchetes com forma {c.shape}, esperado {(self.dim,) * 3}"
            )
        if not np.all(np.isfinite(c)):
            raise ErroEntrada("❌ Constantes de estrutura não finitas")

        escala = max(1.0, float(np.max(np.abs(c))) ** 2)

        antissimetria = float(np.max(np.abs(c + c.transpose(1, 0, 2)), initial=0.0))
        if antissimetria > self.tolerancia * escala:
            raise ErroEntrada(
                f"❌ Colchetes não antissimétricos (desvio {antissimetria:.3e})"
            )

        jacobi = float(np.max(np.abs(self.jacobiador(c)), initial=0.0))
        if jacobi > self.tolerancia * escala:
            raise ErroEntrada(f"❌ Identidade de Jacobi violada (desvio {jacobi:.3e})")

        object.__setattr__(self, "dim", int(self.dim))
        object.__setattr__(self, "colchetes", _congelar(c))

    @staticmethod
    def jacobiador(c: np.ndarray) -> np.ndarray:
        """Σ_m c[i,j,m]c[m,k,l] + cíclico em (i,j,k)."""
        return (
            np.einsum("ijm,mkl->ijkl", c, c)
            + np.einsum("jkm,mil->ijkl", c, c)
            + np.einsum("kim,mjl->ijkl", c, c)
        )

    # -------------------------------------------------------------
    @classmethod
    def a_partir_de_lista(
        cls,
        dim: int,
        colchetes: Iterable[Sequence[float]],
        tolerancia: float = POLITICA_PADRAO.validacao,
    ) -> "Referencial":
        """
        Monta o referencial a partir de entradas (i, j, k, c), 0-based.

        Cada entrada define c[i][j][k] = c e c[j][i][k] = -c; `tolerancia`
        vale para a antissimetria e para Jacobi.
        """
        c = np.zeros((dim, dim, dim))
        for i, j, k, valor in colchetes:
            i, j, k = int(i), int(j), int(k)
            if not all(0 <= idx < dim for idx in (i, j, k)):
                raise ErroEntrada(f"❌ Índice fora do intervalo em ({i}, {j}, {k})")
            if i == j and valor != 0:
                raise ErroEntrada(f"❌ [e_{i + 1}, e_{i + 1}] precisa ser nulo")
            c[i, j, k] = valor
            c[j, i, k] = -valor
        return cls(dim, c, tolerancia)

    @classmethod
    def abeliano(cls, dim: int) -> "Referencial":
        return cls(dim, np.zeros((dim, dim, dim)))

    def para_lista(self) -> list:
        """Entradas não nulas (i, j, k, c) com i < j, 0-based."""
        entradas = []
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                for k in range(self.dim):
                    valor = float(self.colchetes[i, j, k])
                    if valor != 0.0:
                        entradas.append((i, j, k, valor))
        return entradas

    # -------------------------------------------------------------
    def colchete(self, v, w) -> np.ndarray:
        """Coeficientes de [v, w] para campos invariantes."""
        return np.einsum("i,j,ijk->k", coeficientes(v), coeficientes(w), self.colchetes)

    def mudanca_de_base(self, P: np.ndarray) -> "Referencial":
        """Referencial e'_a = Σ_i P[i,a] e_i."""
        P = np.asarray(P, dtype=float)
        P_inv = np.linalg.inv(P)
        novo = np.einsum("ia,jb,ijk,ck->abc", P, P, self.colchetes, P_inv)
        return Referencial(self.dim, novo, self.tolerancia)


# ============================================================
# Métrica (matriz de Gram)
# ============================================================

@dataclass(frozen=True, eq=False)
class MetricaReferencial:
    """Métrica invariante g_ij = g(e_i, e_j), simétrica e positiva definida."""

    gram: np.ndarray
    tolerancia: float = field(default=POLITICA_PADRAO.validacao, repr=False)

    def __post_init__(self):
        g = np.asarray(self.gram, dtype=float)
        if g.ndim != 2 or g.shape[0] != g.shape[1]:
            raise ErroEntrada(f"❌ Matriz de Gram não quadrada: forma {g.shape}")
        if not np.all(np.isfinite(g)):
            raise ErroEntrada("❌ Matriz de Gram com entradas não finitas")

        escala = max(1.0, float(np.max(np.abs(g))))
        assimetria = float(np.max(np.abs(g - g.T), initial=0.0))
        if assimetria > self.tolerancia * escala:
            raise ErroEntrada(f"❌ Matriz de Gram não simétrica (desvio {assimetria:.3e})")

        g = 0.5 * (g + g.T)
        menor = float(np.min(np.linalg.eigvalsh(g)))
        if menor <= 0:
            raise ErroEntrada(
                f"❌ Métrica não é positiva definida (menor autovalor {menor:.3e})"
            )
        object.__setattr__(self, "gram", _congelar(g))

    @property
    def dim(self) -> int:
        return self.gram.shape[0]

    @cached_property
    def inversa(self) -> np.ndarray:
        return np.linalg.inv(self.gram)

    @cached_property
    def base_ortonormal(self) -> np.ndarray:
        """
        Matriz P triangular superior com P^T g P = I.

        As colunas são o Gram-Schmidt de e_1..e_d na ordem do referencial.
        """
        L = scipy.linalg.cholesky(self.gram, lower=True)
        return scipy.linalg.solve_triangular(L, np.eye(self.dim), lower=True).T

    # -------------------------------------------------------------
    def produto(self, v, w) -> float:
        return float(coeficientes(v) @ self.gram @ coeficientes(w))

    def norma_quadrada(self, v) -> float:
        return self.produto(v, v)

    def abaixar(self, v) -> np.ndarray:
        """Covetor X♭(e_i) = g(X, e_i)."""
        return self.gram @ coeficientes(v)

    def componentes_ortonormais(self, tensor: np.ndarray) -> np.ndarray:
        """Componentes de um tensor totalmente covariante no referencial g-ortonormal."""
        T = np.asarray(tensor, dtype=float)
        P = self.base_ortonormal
        for eixo in range(T.ndim):
            T = np.moveaxis(np.tensordot(T, P, axes=([eixo], [0])), -1, eixo)
        return T

    def norma_tensor(self, tensor: np.ndarray) -> float:
        return float(np.linalg.norm(self.componentes_ortonormais(tensor)))

    def complemento_ortonormal(self, u) -> np.ndarray:
        """
        Base g-ortonormal (linhas) do complemento g-ortogonal de u.

        Gram-Schmidt de e_1..e_d depois de u, descartando candidatos
        dependentes.
        """
        u = coeficientes(u)
        base = [u / np.sqrt(self.norma_quadrada(u))]
        for candidato in np.eye(self.dim):
            w = candidato.copy()
            for b in base:
                w = w - self.produto(w, b) * b
            norma = np.sqrt(max(self.norma_quadrada(w), 0.0))
            if norma > 1e-8 * np.sqrt(self.norma_quadrada(candidato)):
                base.append(w / norma)
            if len(base) == self.dim:
                break
        return np.array(base[1:])

    def escalar(self, fator: float) -> "MetricaReferencial":
        return MetricaReferencial(fator * self.gram, self.tolerancia)

    def mudanca_de_base(self, P: np.ndarray) -> "MetricaReferencial":
        P = np.asarray(P, dtype=float)
        return MetricaReferencial(P.T @ self.gram @ P, self.tolerancia)


# ============================================================
# Campos invariantes
# ============================================================

@dataclass(frozen=True, eq=False)
class VetorReferencial:
    """Campo invariante X = Σ x^i e_i."""

    coefs: np.ndarray = field()

    def __post_init__(self):
        x = np.atleast_1d(np.asarray(self.coefs, dtype=float))
        if x.ndim != 1:
            raise ErroEntrada(f"❌ Vetor precisa ser 1-dimensional, forma {x.shape}")
        if not np.all(np.isfinite(x)):
            raise ErroEntrada("❌ Vetor com entradas não finitas")
        object.__setattr__(self, "coefs", _congelar(x))

    @property
    def dim(self) -> int:
        return self.coefs.shape[0]

    @classmethod
    def nulo(cls, dim: int) -> "VetorReferencial":
        return cls(np.zeros(dim))

    @classmethod
    def base(cls, dim: int, indice: int, escala: float = 1.0) -> "VetorReferencial":
        x = np.zeros(dim)
        x[indice] = escala
        return cls(x)

    def escalar(self, fator: float) -> "VetorReferencial":
        return VetorReferencial(fator * self.coefs)

    def eh_nulo(self, tol: float = 0.0) -> bool:
        return bool(np.max(np.abs(self.coefs), initial=0.0) <= tol)


Vetorial = Union[VetorReferencial, np.ndarray, Sequence[float]]


def coeficientes(v: Vetorial) -> np.ndarray:
    """Aceita VetorReferencial ou array e devolve os coeficientes."""
    if isinstance(v, VetorReferencial):
        return v.coefs
    return np.asarray(v, dtype=float)
