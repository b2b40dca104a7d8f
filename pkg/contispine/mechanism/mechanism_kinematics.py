"""
Cinématique de la chaîne de disques du mécanisme continu
Transformations homogènes par articulation sphérique, pose de l'effecteur
et angle maximal inter-disques
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from ..exceptions import JointLimitError

# Tolérance d'orthonormalité des blocs de rotation
ORTHONORMAL_TOLERANCE = 1e-9


def beta_from_dimensions(r: float, d: float) -> float:
    """
    Angle maximal de rotation entre deux disques voisins

    β = π − 2·arcsin(r / (r + d/2))

    Args:
        r: Rayon du disque (m)
        d: Écart entre disques (m)

    Returns:
        β en radians

    Raises:
        ValueError: Si r ≤ 0, d < 0 ou rapport hors du domaine de arcsin
    """
    if r <= 0:
        raise ValueError("r must be > 0")
    if d < 0:
        raise ValueError("d must be >= 0")
    ratio = r / (r + d / 2.0)
    if ratio > 1.0:
        raise ValueError(f"r/(r+d/2) = {ratio} is outside the arcsin domain")
    return math.pi - 2.0 * math.asin(ratio)


@dataclass(frozen=True)
class DiscGeometry:
    """Paramètres géométriques d'une paire disque/articulation et de la chaîne"""

    r: float
    d: float
    l: float
    rho: float
    n: int
    e: tuple = (0.0, 0.0, 0.02)
    psi_limit: Optional[float] = None

    def __post_init__(self):
        if not self.r > 0:
            raise ValueError("geometry.r must be > 0")
        if not self.d > 0:
            raise ValueError("geometry.d must be > 0")
        if not self.l > 0:
            raise ValueError("geometry.l must be > 0")
        if not 0 < self.rho <= self.r:
            raise ValueError("geometry.rho must lie in (0, r]")
        if int(self.n) != self.n or self.n < 1:
            raise ValueError("geometry.n must be an integer >= 1")
        if len(self.e) != 3:
            raise ValueError("geometry.e must be a 3-vector")
        if self.psi_limit is not None and not self.psi_limit > 0:
            raise ValueError("geometry.psi_limit must be > 0")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "e", tuple(float(v) for v in self.e))
        beta = beta_from_dimensions(self.r, self.d)
        if not 0 < beta < math.pi:
            raise ValueError("derived beta must lie in (0, pi)")

    @property
    def beta(self) -> float:
        """Butée angulaire par articulation (rad)"""
        return beta_from_dimensions(self.r, self.d)

    @property
    def axial_limit(self) -> float:
        """Butée axiale ψ par articulation, 90°/n par défaut"""
        if self.psi_limit is not None:
            return self.psi_limit
        return (math.pi / 2.0) / self.n

    def with_rho(self, rho: float) -> DiscGeometry:
        """Copie de la géométrie avec un autre rayon de trou"""
        return DiscGeometry(self.r, self.d, self.l, rho, self.n, self.e, self.psi_limit)


def beta_from_geometry(geom: DiscGeometry) -> float:
    """β de la géométrie complète (voir beta_from_dimensions)"""
    return beta_from_dimensions(geom.r, geom.d)


def _frozen_array(values: Sequence[float]) -> np.ndarray:
    array = np.array(values, dtype=float).reshape(-1)
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class JointAngles:
    """Triplets (φ, θ, ψ) des articulations 1..n, en radians"""

    phi: np.ndarray
    theta: np.ndarray = field(default=None)
    psi: np.ndarray = field(default=None)

    def __post_init__(self):
        phi = _frozen_array(self.phi)
        theta = _frozen_array(self.theta) if self.theta is not None else _frozen_array(np.zeros_like(phi))
        psi = _frozen_array(self.psi) if self.psi is not None else _frozen_array(np.zeros_like(phi))
        if not (phi.shape == theta.shape == psi.shape):
            raise ValueError("phi, theta and psi must have the same length")
        if not (np.all(np.isfinite(phi)) and np.all(np.isfinite(theta)) and np.all(np.isfinite(psi))):
            raise ValueError("joint angles must be finite")
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "psi", psi)

    @property
    def n(self) -> int:
        return int(self.phi.shape[0])

    @property
    def is_planar(self) -> bool:
        """Vrai si seules les rotations sagittales φ sont non nulles"""
        return bool(np.all(self.theta == 0.0) and np.all(self.psi == 0.0))

    @classmethod
    def zeros(cls, n: int) -> JointAngles:
        return cls(np.zeros(n))

    @classmethod
    def uniform(cls, n: int, phi: float = 0.0, theta: float = 0.0, psi: float = 0.0) -> JointAngles:
        """Courbure constante : même triplet sur toutes les articulations"""
        return cls(np.full(n, phi), np.full(n, theta), np.full(n, psi))

    def joint(self, i: int) -> tuple:
        """Triplet de l'articulation i (indexée à partir de 1)"""
        return float(self.phi[i - 1]), float(self.theta[i - 1]), float(self.psi[i - 1])


@dataclass(frozen=True)
class Pose:
    """Transformation homogène 4×4"""

    matrix: np.ndarray

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=float)
        if matrix.shape != (4, 4):
            raise ValueError("a pose is a 4x4 homogeneous matrix")
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    @property
    def rotation(self) -> np.ndarray:
        return self.matrix[:3, :3]

    @property
    def translation(self) -> np.ndarray:
        return self.matrix[:3, 3]

    def __matmul__(self, other: Pose) -> Pose:
        return Pose(self.matrix @ other.matrix)

    def inverse(self) -> Pose:
        inverse = np.eye(4)
        inverse[:3, :3] = self.rotation.T
        inverse[:3, 3] = -self.rotation.T @ self.translation
        return Pose(inverse)

    def is_valid(self, tol: float = ORTHONORMAL_TOLERANCE) -> bool:
        """Bloc de rotation orthonormé, déterminant +1 et dernière ligne (0,0,0,1)"""
        rotation = self.rotation
        orthonormal = np.allclose(rotation.T @ rotation, np.eye(3), atol=tol, rtol=0.0)
        proper = abs(np.linalg.det(rotation) - 1.0) <= tol
        bottom = np.array_equal(self.matrix[3], np.array([0.0, 0.0, 0.0, 1.0]))
        return bool(orthonormal and proper and bottom)

    @classmethod
    def identity(cls) -> Pose:
        return cls(np.eye(4))


def rot_x(angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])


def rot_y(angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])


def rot_z(angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def translation_matrix(vector: Sequence[float]) -> np.ndarray:
    matrix = np.eye(4)
    matrix[:3, 3] = np.asarray(vector, dtype=float)
    return matrix


def _joint_matrix(phi: float, theta: float, psi: float, l: float) -> np.ndarray:
    rotation = rot_x(phi) @ rot_y(theta) @ rot_z(psi)
    matrix = np.eye(4)
    matrix[:3, :3] = rotation
    # Tran(l) appliquée après la rotation, le long de z local
    matrix[:3, 3] = rotation[:, 2] * l
    return matrix


def joint_transform(phi: float, theta: float, psi: float, l: float) -> Pose:
    """
    Transformation d'un disque vers le suivant : Rot_x(φ)·Rot_y(θ)·Rot_z(ψ)·Tran(l)

    Args:
        phi: Rotation sagittale (rad)
        theta: Rotation frontale (rad)
        psi: Rotation transverse (rad)
        l: Distance entre centres d'articulations voisines (m)

    Returns:
        Pose T_{i+1}
    """
    if not all(math.isfinite(v) for v in (phi, theta, psi, l)):
        raise ValueError("joint_transform expects finite inputs")
    return Pose(_joint_matrix(phi, theta, psi, l))


def chain_frames(angles: JointAngles, l: float) -> np.ndarray:
    """
    Repères cumulés T_0 = I, T_k = T_1·…·T_k pour k = 1..n

    Returns:
        Tableau (n+1, 4, 4)
    """
    frames = np.empty((angles.n + 1, 4, 4))
    frames[0] = np.eye(4)
    for k in range(1, angles.n + 1):
        frames[k] = frames[k - 1] @ _joint_matrix(*angles.joint(k), l)
    return frames


def joint_limit_violations(angles: JointAngles, geom: DiscGeometry) -> tuple:
    """
    Articulations (indices 1..n) hors butée

    La butée de flexion est un cône : la déviation de l'axe local,
    arccos(cos φ·cos θ), ne dépasse pas β. La rotation axiale ψ est bornée
    séparément par geom.axial_limit.
    """
    deviation = np.arccos(np.clip(np.cos(angles.phi) * np.cos(angles.theta), -1.0, 1.0))
    bent = deviation > geom.beta + 1e-12
    twisted = np.abs(angles.psi) > geom.axial_limit + 1e-12
    return tuple(int(i) + 1 for i in np.flatnonzero(bent | twisted))


def end_pose(angles: JointAngles, geom: DiscGeometry, strict: bool = False) -> Pose:
    """
    Pose de l'effecteur T_E = T_1·T_2·…·T_n·Tran(e)

    Args:
        angles: Angles des n articulations
        geom: Géométrie de la chaîne
        strict: Lever une erreur si une articulation dépasse sa butée

    Returns:
        Pose de la liaison avec l'orthèse d'épaule

    Raises:
        JointLimitError: En mode strict, si une butée est dépassée
    """
    if angles.n != geom.n:
        raise ValueError(f"expected {geom.n} joints, got {angles.n}")
    if strict:
        violations = joint_limit_violations(angles, geom)
        if violations:
            raise JointLimitError(f"joint limit exceeded at joints {list(violations)}", violations)
    frames = chain_frames(angles, geom.l)
    return Pose(frames[-1] @ translation_matrix(geom.e))


def constant_curvature_pose(
    n: int, l: float, bend_per_joint: float, e: Sequence[float] = (0.0, 0.0, 0.0)
) -> Pose:
    """
    Forme fermée d'une chaîne à courbure constante dans le plan sagittal

    Les sommets d'une chaîne de n segments de longueur l tournant chacun de φ
    sont sur un cercle ; la somme des directions se réduit à des produits de
    sinus (somme de Lagrange).
    """
    phi = bend_per_joint
    rotation = rot_x(n * phi)
    if phi == 0.0:
        position = np.array([0.0, 0.0, n * l])
    else:
        ratio = math.sin(n * phi / 2.0) / math.sin(phi / 2.0)
        sum_sin = ratio * math.sin((n + 1) * phi / 2.0)
        sum_cos = ratio * math.cos((n + 1) * phi / 2.0)
        position = l * np.array([0.0, -sum_sin, sum_cos])
    matrix = np.eye(4)
    matrix[:3, :3] = rotation
    matrix[:3, 3] = position + rotation @ np.asarray(e, dtype=float)
    return Pose(matrix)
