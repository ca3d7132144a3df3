#pragma once

#include "permlift/cipher.hpp"
#include "permlift/permutation.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace permlift {

using Complex = std::complex<double>;
using Amplitudes = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using Values = std::vector<std::uint32_t>;

inline constexpr double kTolerance = 1e-10;

struct Register {
    std::string name;
    std::uint32_t dim = 1;
};

/// Ordered registers; the last register is the fastest-varying digit of a basis index.
class Layout {
public:
    Layout() = default;
    explicit Layout(std::vector<Register> regs);

    std::size_t dim() const { return dim_; }
    std::size_t count() const { return regs_.size(); }
    const Register& reg(std::size_t i) const { return regs_.at(i); }
    const std::vector<Register>& registers() const { return regs_; }
    std::size_t index(const std::string& name) const;
    bool has(const std::string& name) const;
    std::size_t stride(std::size_t i) const { return strides_[i]; }

    std::uint32_t value(std::size_t basis, std::size_t reg) const
    {
        return static_cast<std::uint32_t>((basis / strides_[reg]) % regs_[reg].dim);
    }
    std::size_t with_value(std::size_t basis, std::size_t reg, std::uint32_t v) const
    {
        return basis + (static_cast<std::size_t>(v) - value(basis, reg)) * strides_[reg];
    }
    Values decode(std::size_t basis) const;
    std::size_t encode(const Values& vals) const;
    Layout with(Register r) const;

    bool operator==(const Layout& o) const;

private:
    std::vector<Register> regs_;
    std::vector<std::size_t> strides_;
    std::size_t dim_ = 1;
};

class StateVector {
public:
    StateVector() = default;
    StateVector(Layout layout, Amplitudes amps);
    static StateVector basis(const Layout& layout, std::size_t index = 0);

    const Layout& layout() const { return layout_; }
    const Amplitudes& amps() const { return amps_; }
    std::size_t dim() const { return layout_.dim(); }
    double norm2() const { return amps_.squaredNorm(); }

private:
    Layout layout_;
    Amplitudes amps_;
};

enum class Direction { forward, backward };

const char* to_string(Direction d);

/// Which registers an oracle call touches. Indices into a Layout.
struct OracleWiring {
    std::optional<std::size_t> key;
    std::size_t query = 0;
    std::size_t response = 1;
    std::optional<std::size_t> direction;
};

/// Checks dimensions against a table: query/response dims = n = 2^m, key dim = key count.
void check_wiring(const Layout& layout, const OracleWiring& w, Elem n, Key key_count);

/// |K,x⟩|y⟩ ↦ |K,x⟩|y ⊕ E_K(x)⟩ (forward) or ⊕ E_K⁻¹(x) (backward). Permutations use no key register.
StateVector apply_oracle(const StateVector& s, const OracleWiring& w, const Permutation& pi, Direction d);
StateVector apply_oracle(const StateVector& s, const OracleWiring& w, const Cipher& e, Direction d);
/// Dispatch on the direction register: 0 forward, 1 backward.
StateVector apply_combined_oracle(const StateVector& s, const OracleWiring& w, const Permutation& pi);
StateVector apply_combined_oracle(const StateVector& s, const OracleWiring& w, const Cipher& e);

template <class Table>
Matrix oracle_matrix(const Layout& layout, const OracleWiring& w, const Table& t, Direction d);

/// Computational-basis projection: keeps basis states whose values on `regs` are in `kept`.
struct Projector {
    std::vector<std::size_t> regs;
    std::set<Values> kept;
};

StateVector apply_projector(const StateVector& s, const Projector& p);
StateVector apply_unitary(const StateVector& s, const Matrix& u);

/// Born-rule marginal over `regs`; sums to the squared norm of s.
std::map<Values, double> measure_distribution(const StateVector& s, const std::vector<std::size_t>& regs);

bool is_unitary(const Matrix& m, double tol = kTolerance);
double distance(const StateVector& a, const StateVector& b);

}
