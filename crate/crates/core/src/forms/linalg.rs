use crate::jet::Scalar;

pub type Mat3<S> = [[S; 3]; 3];

pub fn dot<S: Scalar>(a: &[S; 3], b: &[S; 3]) -> S {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross<S: Scalar>(a: &[S; 3], b: &[S; 3]) -> [S; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn scale<S: Scalar>(a: &[S; 3], k: S) -> [S; 3] {
    [a[0] * k, a[1] * k, a[2] * k]
}

pub fn matvec<S: Scalar>(m: &Mat3<S>, v: &[S; 3]) -> [S; 3] {
    [dot(&m[0], v), dot(&m[1], v), dot(&m[2], v)]
}

/// `a^T m b`.
pub fn bilinear<S: Scalar>(m: &Mat3<S>, a: &[S; 3], b: &[S; 3]) -> S {
    dot(a, &matvec(m, b))
}

pub fn det3<S: Scalar>(m: &Mat3<S>) -> S {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Inverse by the adjugate; callers check the determinant first.
pub fn inv3<S: Scalar>(m: &Mat3<S>) -> Mat3<S> {
    let inv_det = det3(m).recip();
    let c = |r0: usize, c0: usize, r1: usize, c1: usize| m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    [
        [c(1, 1, 2, 2) * inv_det, c(0, 2, 2, 1) * inv_det, c(0, 1, 1, 2) * inv_det],
        [c(1, 2, 2, 0) * inv_det, c(0, 0, 2, 2) * inv_det, c(0, 2, 1, 0) * inv_det],
        [c(1, 0, 2, 1) * inv_det, c(0, 1, 2, 0) * inv_det, c(0, 0, 1, 1) * inv_det],
    ]
}

pub fn transpose<S: Scalar>(m: &Mat3<S>) -> Mat3<S> {
    [
        [m[0][0], m[1][0], m[2][0]],
        [m[0][1], m[1][1], m[2][1]],
        [m[0][2], m[1][2], m[2][2]],
    ]
}

/// Sylvester's criterion on the primal values.
pub fn is_positive_definite<S: Scalar>(m: &Mat3<S>) -> bool {
    let v = m.map(|r| r.map(Scalar::value));
    let minor2 = v[0][0] * v[1][1] - v[0][1] * v[1][0];
    v[0][0] > 0.0 && minor2 > 0.0 && det3(&v) > 0.0
}

pub fn identity<S: Scalar>() -> Mat3<S> {
    let (o, z) = (S::one(), S::zero());
    [[o, z, z], [z, o, z], [z, z, o]]
}
