#include "permlift/circuit.hpp"
#include "permlift/errors.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <numbers>

#include <unsupported/Eigen/KroneckerProduct>

namespace permlift {

const char* to_string(SlotKind k)
{
    switch (k) {
    case SlotKind::forward:
        return "forward";
    case SlotKind::backward:
        return "backward";
    case SlotKind::combined:
        return "combined";
    }
    return "?";
}

SlotKind slot_kind_from_string(const std::string& s)
{
    if (s == "forward")
        return SlotKind::forward;
    if (s == "backward")
        return SlotKind::backward;
    if (s == "combined")
        return SlotKind::combined;
    throw ParseError("unknown slot tag " + s);
}

bool Circuit::is_normal_form() const
{
    for (auto s : slots)
        if (s == SlotKind::combined)
            return false;
    return true;
}

Direction Circuit::direction(std::size_t i) const
{
    switch (slots.at(i - 1)) {
    case SlotKind::forward:
        return Direction::forward;
    case SlotKind::backward:
        return Direction::backward;
    default:
        throw DomainError("slot " + std::to_string(i) + " is a combined slot");
    }
}

void Circuit::validate(double tol) const
{
    if (unitaries.size() != slots.size() + 1)
        throw DomainError("circuit needs Q+1 unitaries");
    const auto d = static_cast<Eigen::Index>(layout.dim());
    for (const auto& u : unitaries) {
        if (u.rows() != d || u.cols() != d)
            throw DomainError("unitary dimension differs from layout");
        if (!is_unitary(u, tol))
            throw DomainError("matrix is not unitary");
    }
    for (auto s : slots)
        if (s == SlotKind::combined && !wiring.direction)
            throw DomainError("combined slot without a direction register");
}

CircuitBuilder::CircuitBuilder(Layout layout, OracleWiring wiring)
    : layout_(std::move(layout)), wiring_(wiring),
      pending_(Matrix::Identity(static_cast<Eigen::Index>(layout_.dim()), static_cast<Eigen::Index>(layout_.dim())))
{
}

CircuitBuilder& CircuitBuilder::hadamard(const std::string& name)
{
    const std::size_t r = layout_.index(name);
    const std::uint32_t d = layout_.reg(r).dim;
    if (!is_power_of_two(d))
        throw DomainError("hadamard needs a power-of-two register");
    Matrix h(d, d);
    const double s = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::uint32_t u = 0; u < d; ++u)
        for (std::uint32_t v = 0; v < d; ++v)
            h(u, v) = (std::popcount(u & v) % 2 ? -s : s);
    return register_unitary(name, h);
}

CircuitBuilder& CircuitBuilder::register_unitary(const std::string& name, const Matrix& u)
{
    const std::size_t r = layout_.index(name);
    const std::uint32_t d = layout_.reg(r).dim;
    if (u.rows() != d || u.cols() != d || !is_unitary(u))
        throw DomainError("register unitary has wrong shape or is not unitary");
    Matrix out = Matrix::Zero(pending_.rows(), pending_.cols());
    for (std::size_t b = 0; b < layout_.dim(); ++b) {
        const std::uint32_t v = layout_.value(b, r);
        for (std::uint32_t w = 0; w < d; ++w) {
            const Complex c = u(w, v);
            if (c != Complex(0.0, 0.0))
                out.row(static_cast<Eigen::Index>(layout_.with_value(b, r, w))) += c * pending_.row(static_cast<Eigen::Index>(b));
        }
    }
    pending_ = std::move(out);
    return *this;
}

CircuitBuilder& CircuitBuilder::permute_basis(const std::function<void(Values&)>& f)
{
    Matrix out = Matrix::Zero(pending_.rows(), pending_.cols());
    std::vector<bool> hit(layout_.dim(), false);
    for (std::size_t b = 0; b < layout_.dim(); ++b) {
        Values v = layout_.decode(b);
        f(v);
        const std::size_t t = layout_.encode(v);
        if (hit[t])
            throw DomainError("basis map is not a bijection");
        hit[t] = true;
        out.row(static_cast<Eigen::Index>(t)) = pending_.row(static_cast<Eigen::Index>(b));
    }
    pending_ = std::move(out);
    return *this;
}

CircuitBuilder& CircuitBuilder::controlled_phase(const std::function<bool(const Values&)>& pred, double theta)
{
    const Complex ph = std::polar(1.0, theta);
    for (std::size_t b = 0; b < layout_.dim(); ++b)
        if (pred(layout_.decode(b)))
            pending_.row(static_cast<Eigen::Index>(b)) *= ph;
    return *this;
}

CircuitBuilder& CircuitBuilder::diffusion(const std::string& reg)
{
    const std::size_t r = layout_.index(reg);
    hadamard(reg);
    controlled_phase([r](const Values& v) { return v[r] != 0; }, std::numbers::pi);
    return hadamard(reg);
}

CircuitBuilder& CircuitBuilder::swap(const std::string& a, const std::string& b)
{
    const std::size_t ra = layout_.index(a), rb = layout_.index(b);
    if (layout_.reg(ra).dim != layout_.reg(rb).dim)
        throw DomainError("swap needs registers of equal dimension");
    return permute_basis([ra, rb](Values& v) { std::swap(v[ra], v[rb]); });
}

CircuitBuilder& CircuitBuilder::slot(SlotKind kind)
{
    unitaries_.push_back(pending_);
    slots_.push_back(kind);
    pending_ = Matrix::Identity(pending_.rows(), pending_.cols());
    return *this;
}

Circuit CircuitBuilder::build()
{
    Circuit c{layout_, wiring_, unitaries_, slots_};
    c.unitaries.push_back(pending_);
    c.validate();
    return c;
}

namespace {

template <class Table>
StateVector call_slot(const Circuit& c, std::size_t i, const StateVector& s, const Table& t)
{
    if (c.slots[i - 1] == SlotKind::combined)
        return apply_combined_oracle(s, c.wiring, t);
    return apply_oracle(s, c.wiring, t, c.direction(i));
}

}

template <class Table>
StateVector run_circuit(const Circuit& c, const Table& t)
{
    StateVector s = apply_unitary(StateVector::basis(c.layout), c.unitaries.at(0));
    for (std::size_t i = 1; i <= c.slot_count(); ++i)
        s = apply_unitary(call_slot(c, i, s, t), c.unitaries[i]);
    return s;
}

template <class Table>
StateVector run_with_insertions(const Circuit& c, const std::vector<Table>& oracles,
                                const std::vector<std::optional<Projector>>& projections)
{
    if (oracles.size() != c.slot_count() || projections.size() != c.slot_count())
        throw DomainError("insertion schedule length differs from slot count");
    StateVector s = apply_unitary(StateVector::basis(c.layout), c.unitaries.at(0));
    for (std::size_t i = 1; i <= c.slot_count(); ++i) {
        if (projections[i - 1])
            s = apply_projector(s, *projections[i - 1]);
        s = apply_unitary(call_slot(c, i, s, oracles[i - 1]), c.unitaries[i]);
    }
    return s;
}

template StateVector run_circuit<Permutation>(const Circuit&, const Permutation&);
template StateVector run_circuit<Cipher>(const Circuit&, const Cipher&);
template StateVector run_with_insertions<Permutation>(const Circuit&, const std::vector<Permutation>&,
                                                      const std::vector<std::optional<Projector>>&);
template StateVector run_with_insertions<Cipher>(const Circuit&, const std::vector<Cipher>&,
                                                 const std::vector<std::optional<Projector>>&);

namespace {

// Lifts an operator on the original layout to original ⊗ scratch.
Matrix extend(const Matrix& u, std::uint32_t scratch_dim)
{
    return Eigen::kroneckerProduct(u, Matrix::Identity(scratch_dim, scratch_dim)).eval();
}

}

Circuit normalize(const Circuit& c)
{
    c.validate();
    const std::uint32_t n = c.layout.reg(c.wiring.response).dim;
    std::string scratch = "scratch";
    while (c.layout.has(scratch))
        scratch += "_";
    const Layout L = c.layout.with({scratch, n});
    const std::size_t rs = c.wiring.response, rx = L.index(scratch);
    const auto dir = c.wiring.direction;

    // Swap of response and scratch on the basis states for which this half is a dummy.
    auto swapper = [&](const std::function<bool(const Values&)>& dummy) {
        CircuitBuilder b(L, c.wiring);
        b.permute_basis([&](Values& v) {
            if (dummy(v))
                std::swap(v[rs], v[rx]);
        });
        return b.build().unitaries.back();
    };
    auto fwd_dummy = [&](SlotKind k) -> std::function<bool(const Values&)> {
        switch (k) {
        case SlotKind::forward:
            return [](const Values&) { return false; };
        case SlotKind::backward:
            return [](const Values&) { return true; };
        default:
            return [dir](const Values& v) { return v[*dir] == 1; };
        }
    };
    auto bwd_dummy = [&](SlotKind k) -> std::function<bool(const Values&)> {
        switch (k) {
        case SlotKind::forward:
            return [](const Values&) { return true; };
        case SlotKind::backward:
            return [](const Values&) { return false; };
        default:
            return [dir](const Values& v) { return v[*dir] == 0; };
        }
    };

    CircuitBuilder prep(L, c.wiring);
    prep.hadamard(scratch);
    const Matrix h = prep.build().unitaries.back();

    Circuit out{L, c.wiring, {}, {}};
    const std::size_t q = c.slot_count();
    Matrix cur = extend(c.unitaries[0], n) * h;
    for (std::size_t i = 0; i < q; ++i) {
        const Matrix sf = swapper(fwd_dummy(c.slots[i]));
        const Matrix sb = swapper(bwd_dummy(c.slots[i]));
        out.unitaries.push_back(sf * cur);
        out.slots.push_back(SlotKind::forward);
        out.unitaries.push_back(sb * sf);
        out.slots.push_back(SlotKind::backward);
        cur = extend(c.unitaries[i + 1], n) * sb;
    }
    out.unitaries.push_back(cur);
    out.validate();
    return out;
}

namespace {

nlohmann::json matrix_to_json(const Matrix& m)
{
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const nlohmann::json& j, std::size_t dim)
{
    if (j.size() != dim)
        throw ParseError("unitary has wrong row count");
    const auto d = static_cast<Eigen::Index>(dim);
    Matrix m(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
        const auto& row = j.at(static_cast<std::size_t>(r));
        if (row.size() != dim)
            throw ParseError("unitary has wrong column count");
        for (Eigen::Index c = 0; c < d; ++c) {
            const auto& e = row.at(static_cast<std::size_t>(c));
            m(r, c) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
        }
    }
    return m;
}

}

nlohmann::json to_json(const Circuit& c)
{
    nlohmann::json regs = nlohmann::json::array();
    for (const auto& r : c.layout.registers())
        regs.push_back({{"name", r.name}, {"dim", r.dim}});
    auto name = [&](std::optional<std::size_t> i) -> nlohmann::json {
        return i ? nlohmann::json(c.layout.reg(*i).name) : nlohmann::json(nullptr);
    };
    nlohmann::json slots = nlohmann::json::array();
    for (auto s : c.slots)
        slots.push_back(to_string(s));
    nlohmann::json us = nlohmann::json::array();
    for (const auto& u : c.unitaries)
        us.push_back(matrix_to_json(u));
    return {{"registers", regs},
            {"wiring",
             {{"key", name(c.wiring.key)},
              {"query", name(c.wiring.query)},
              {"response", name(c.wiring.response)},
              {"direction", name(c.wiring.direction)}}},
            {"slot_count", c.slots.size()},
            {"slots", slots},
            {"unitaries", us}};
}

Circuit circuit_from_json(const nlohmann::json& j)
{
    try {
        std::vector<Register> regs;
        for (const auto& r : j.at("registers"))
            regs.push_back({r.at("name").get<std::string>(), r.at("dim").get<std::uint32_t>()});
        Circuit c;
        c.layout = Layout(std::move(regs));
        const auto& w = j.at("wiring");
        auto idx = [&](const char* k) -> std::optional<std::size_t> {
            if (!w.contains(k) || w.at(k).is_null())
                return std::nullopt;
            return c.layout.index(w.at(k).get<std::string>());
        };
        c.wiring.key = idx("key");
        c.wiring.query = *idx("query");
        c.wiring.response = *idx("response");
        c.wiring.direction = idx("direction");
        for (const auto& s : j.at("slots"))
            c.slots.push_back(slot_kind_from_string(s.get<std::string>()));
        if (j.at("slot_count").get<std::size_t>() != c.slots.size())
            throw ParseError("slot_count disagrees with slots");
        for (const auto& u : j.at("unitaries"))
            c.unitaries.push_back(matrix_from_json(u, c.layout.dim()));
        c.validate(1e-9);
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("circuit json: ") + e.what());
    }
}

Circuit load_circuit(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return circuit_from_json(j);
}

void save_circuit(const Circuit& c, const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write " + path);
    out << to_json(c).dump() << "\n";
}

}
