#pragma once

#include <Eigen/Dense>

namespace torsionlab {

/// Clifford actions on the complexified exterior algebra of a flat oriented
/// p-dimensional space, in the subset-bitmask basis: c(e_a) = wedge - contract,
/// chat(e_a) = wedge + contract. Built structurally so the relations
///   c_a c_b + c_b c_a = -2 delta_ab,  chat_a chat_b + chat_b chat_a = 2 delta_ab,
///   c_a chat_b + chat_b c_a = 0
/// hold exactly.
Eigen::MatrixXcd clifford_c(int p, int axis);    // axis 1..p
Eigen::MatrixXcd clifford_chat(int p, int axis); // axis 1..p

/// Chirality element (sqrt(-1))^{p(p+1)/2} c(e_1)...c(e_p); squares to Id.
Eigen::MatrixXcd clifford_tau(int p);

/// Wedge by dx^axis and contraction by e_axis on the bitmask basis.
Eigen::MatrixXcd exterior_wedge_op(int p, int axis);
Eigen::MatrixXcd exterior_contract_op(int p, int axis);

} // namespace torsionlab
