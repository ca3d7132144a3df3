#pragma once

#include "permlift/games.hpp"

namespace permlift {

// Quantum circuits use registers q (query) and r (response), both of dimension n.

/// H on q; per iteration: forward slot, phase −1 on π(x) = x, swap, backward slot, diffusion on q.
/// Two slots per iteration. Output is q.
QuantumAdversary grover_fixed_point(Elem n, unsigned iterations);
/// Grover for R(x, π(x)) with a forward uncompute: forward, phase, forward, diffusion.
QuantumAdversary grover_relation(Elem n, const Relation& r, unsigned iterations);
/// One forward slot, phase on R, diffusion, no uncompute. Output is q.
QuantumAdversary grover_with_garbage(Elem n, const Relation& r);
/// Queries x0 forward and outputs the answer register.
QuantumAdversary query_and_output(Elem n, Elem x0);
/// Uniform y over values with the low `low_zero_bits` bits clear, one backward slot, outputs π⁻¹(y).
QuantumAdversary backward_search(Elem n, unsigned low_zero_bits);
/// Makes a forward and a backward query, then outputs the constant held in an untouched register.
QuantumAdversary constant_output(Elem n, Elem x_out);

/// Circuits with at most two slots over an n-element domain.
std::vector<std::shared_ptr<const QuantumAdversary>> quantum_battery(Elem n);

std::shared_ptr<const ClassicalAdversary> classical_guess(Elem x0);
std::shared_ptr<const ClassicalAdversary> classical_query_output(Elem x0);
std::shared_ptr<const ClassicalAdversary> classical_inverse_chase(Elem y0);
/// Two forward queries at 0 and 1; outputs a fixed point if seen, else 2.
std::shared_ptr<const ClassicalAdversary> classical_fixed_point_hunter();
/// Backward queries at 0, then at 2^low_bits if the first preimage has a set low bit.
std::shared_ptr<const ClassicalAdversary> classical_double_sided_hunter(unsigned low_bits);
/// Output drawn from its coins, n coin values.
std::shared_ptr<const ClassicalAdversary> classical_random_guess(Elem n);
/// Spends two queries and outputs x_out.
std::shared_ptr<const ClassicalAdversary> classical_constant(Elem x_out);

std::vector<std::shared_ptr<const ClassicalAdversary>> classical_battery(Elem n);

/// Fixed point, double-sided zero (n a power of 4) and successor.
std::vector<Relation> relation_battery(Elem n);

/// Quantum adversary that answers each challenger message with its own circuit.
struct InteractiveQuantumAdversary {
    std::string name;
    std::function<QuantumAdversary(const Message&)> build;
};

/// Inverts the challenger's y with one backward query.
InteractiveQuantumAdversary oneway_inverter(Elem n);
/// Queries y forward and replies with π(y).
InteractiveQuantumAdversary oneway_forward_chase(Elem n);
/// Ignores the message and runs a fixed circuit.
InteractiveQuantumAdversary non_interactive(std::shared_ptr<const QuantumAdversary> a);

}
