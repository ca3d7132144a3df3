#pragma once

#include "permlift/simulator.hpp"

namespace permlift {

struct Component {
    SimChoice choice;
    int sign = 1;
    StateVector state;
};

/// Every |φ_{v,b,c}⟩ for a normal-form circuit. Throws PreconditionError unless the table pair is good for xs.
template <class T>
std::vector<Component> decompose_state(const Circuit& c, const T& pi, const T& pi_star, const std::vector<Point>& xs);

struct DecompositionCheck {
    std::size_t components = 0;
    double residual = 0;
};

/// Compares the signed component sum against the circuit run on the fully reprogrammed table.
template <class T>
DecompositionCheck check_decomposition(const Circuit& c, const T& pi, const T& pi_star, const std::vector<Point>& xs);

}
