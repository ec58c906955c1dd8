#pragma once
// Covariant/contravariant calculus for ternary quartics: the Hessian, the
// differential contraction D, binary transvectants, the sigma/psi
// contravariants, the J-pairings of quadratic forms, and the chain
// rho, tau, xi, eta, nu, chi that feeds the invariant layer.

#include "quartix/poly.hpp"

#include <utility>

namespace quartix {

enum class Space { Covariant, Contravariant };

// A form in (x,y,z) (covariant) or the dual (u,v,w) (contravariant), with its
// degree in the quartic's coefficients and its order in the variables.  The
// payload is homogeneous of total degree `order`; `degree` is the exact
// lambda-scaling exponent: C(lambda F) = lambda^degree C(F).
struct Form {
  MultiPoly p;
  Space space = Space::Covariant;
  int degree = 0;
  int order = 0;
};

// det of the 3x3 matrix of second partials: covariant of degree 3, order 6
Form hessian(const MultiPoly& F);

// The monomial u^a v^b w^c acts as d^{a+b+c}/dx^a dy^b dz^c (no factorial
// normalization), and symmetrically for a covariant acting on a dual form.
MultiPoly d_op_raw(const MultiPoly& op, const MultiPoly& target);
// checked version with degree/order bookkeeping: spaces must differ and
// ord(op) <= ord(target); result has order ord(target) - ord(op), degree
// deg(op) + deg(target), and lives in the target's space
Form d_op(const Form& op, const Form& target);

// k-th transvectant of binary forms, classical factorial prefactor
// (r-k)!(s-k)!/(r!s!); k must satisfy 0 <= k <= min(deg F, deg G)
MultiPoly transvectant(const MultiPoly& F, const MultiPoly& G, int k);

// (sigma, psi) of a binary quartic via the closed formulas in the classical
// coefficients a40..a04, and via the transvectant route ((F,F)^4/2 and
// (F,(F,F)^2)^4/6); the two agree identically
std::pair<Elem, Elem> binary_quartic_sigma_psi(const MultiPoly& q);
std::pair<Elem, Elem> binary_quartic_sigma_psi_transvectant(const MultiPoly& q);

// sigma (order 4, degree 2) and psi (order 6, degree 3) contravariants of a
// ternary quartic: intersect ux+vy+wz = 0 with F, read the binary quartic
// R(x,y) = F(xw, yw, -ux-vy), apply the binary formulas to its classical
// coefficients, strip w^4 / w^6, and scale by the calibration constants
// c_sigma, c_psi
std::pair<Form, Form> sigma_psi_contravariants(const MultiPoly& F);

// symmetric Gram matrix D with q = v^T D v for an order-2 ternary form
Mat gram_matrix(const MultiPoly& q);
Elem mat_det3(const Mat& m);
Mat mat_adj3(const Mat& m);  // adjugate: M * adj(M) = det(M) * Id
Elem mat_dot(const Mat& a, const Mat& b);

// pairings of two order-2 forms in dual spaces:
//   J11 = <D(phi), D(psi)>, J22 = <adj D(phi), adj D(psi)>,
//   J30 = det D(phi), J03 = det D(psi)
struct JPairings {
  Elem j11, j22, j30, j03;
};
JPairings j_pairings(const Form& phi, const Form& psi);

// every intermediate form entering the thirteen invariants, with the printed
// normalizations applied: rho = D_F(psi)/144, tau = D_rho(F)/12,
// xi = D_sigma(H)/72, eta = D_xi(sigma)/12, nu = D_eta(D_rho(H))/8,
// chi = D_{tau^2}(psi)/8
struct CovariantChain {
  Form sigma, psi, hess, rho, tau, xi, eta, nu, chi;
};
CovariantChain covariant_chain(const MultiPoly& F);

}  // namespace quartix
