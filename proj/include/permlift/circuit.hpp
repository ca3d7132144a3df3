#pragma once

#include "permlift/qsim.hpp"

#include <functional>

namespace permlift {

enum class SlotKind { forward, backward, combined };

const char* to_string(SlotKind k);
SlotKind slot_kind_from_string(const std::string& s);

/// U_{Q+1} · O^(Q) · U_Q ⋯ O^(1) · U_1 |0⟩. Normal form when no slot is combined.
struct Circuit {
    Layout layout;
    OracleWiring wiring;
    std::vector<Matrix> unitaries;
    std::vector<SlotKind> slots;

    std::size_t slot_count() const { return slots.size(); }
    bool is_normal_form() const;
    /// Slot i (1-based) direction; throws for combined slots.
    Direction direction(std::size_t i) const;
    /// Throws DomainError on shape mismatches or a non-unitary matrix.
    void validate(double tol = kTolerance) const;
};

/// Accumulates gates into the pending unitary; slot() closes it.
class CircuitBuilder {
public:
    CircuitBuilder(Layout layout, OracleWiring wiring);

    /// Walsh-Hadamard on every qubit of a power-of-two register.
    CircuitBuilder& hadamard(const std::string& reg);
    /// Basis permutation given as an in-place map on register values. Must be a bijection.
    CircuitBuilder& permute_basis(const std::function<void(Values&)>& f);
    /// Multiplies by e^{iθ} every basis state satisfying pred.
    CircuitBuilder& controlled_phase(const std::function<bool(const Values&)>& pred, double theta);
    /// Arbitrary unitary on one register.
    CircuitBuilder& register_unitary(const std::string& reg, const Matrix& u);
    /// 2|s⟩⟨s| − I on a register, with |s⟩ the uniform superposition (up to global phase).
    CircuitBuilder& diffusion(const std::string& reg);
    CircuitBuilder& swap(const std::string& a, const std::string& b);

    CircuitBuilder& slot(SlotKind kind);
    Circuit build();

    const Layout& layout() const { return layout_; }

private:
    Layout layout_;
    OracleWiring wiring_;
    Matrix pending_;
    std::vector<Matrix> unitaries_;
    std::vector<SlotKind> slots_;
};

template <class Table>
StateVector run_circuit(const Circuit& c, const Table& t);

/// Slot i uses oracles[i-1]; projections[i-1], when set, is applied just before that oracle.
template <class Table>
StateVector run_with_insertions(const Circuit& c, const std::vector<Table>& oracles,
                                const std::vector<std::optional<Projector>>& projections);

/// Rewrites every U_π slot into one forward and one backward slot (2q slots, odd forward).
/// Inactive halves are made neutral by swapping the response register with a scratch register
/// held in the uniform superposition, which every XOR oracle leaves unchanged.
Circuit normalize(const Circuit& c);

nlohmann::json to_json(const Circuit& c);
Circuit circuit_from_json(const nlohmann::json& j);
Circuit load_circuit(const std::string& path);
void save_circuit(const Circuit& c, const std::string& path);

}
