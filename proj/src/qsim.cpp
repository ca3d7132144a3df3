#include "permlift/qsim.hpp"
#include "permlift/errors.hpp"

namespace permlift {

Layout::Layout(std::vector<Register> regs) : regs_(std::move(regs)), strides_(regs_.size(), 1)
{
    for (std::size_t i = regs_.size(); i-- > 0;) {
        if (regs_[i].dim == 0)
            throw DomainError("register " + regs_[i].name + " has dimension 0");
        strides_[i] = dim_;
        dim_ *= regs_[i].dim;
        if (dim_ > (std::size_t{1} << 20))
            throw CapabilityError("state dimension exceeds 2^20");
    }
}

std::size_t Layout::index(const std::string& name) const
{
    for (std::size_t i = 0; i < regs_.size(); ++i)
        if (regs_[i].name == name)
            return i;
    throw DomainError("no register named " + name);
}

bool Layout::has(const std::string& name) const
{
    for (const auto& r : regs_)
        if (r.name == name)
            return true;
    return false;
}

Values Layout::decode(std::size_t basis) const
{
    Values v(regs_.size());
    for (std::size_t i = 0; i < regs_.size(); ++i)
        v[i] = value(basis, i);
    return v;
}

std::size_t Layout::encode(const Values& vals) const
{
    if (vals.size() != regs_.size())
        throw DomainError("value tuple has wrong arity");
    std::size_t b = 0;
    for (std::size_t i = 0; i < regs_.size(); ++i) {
        if (vals[i] >= regs_[i].dim)
            throw DomainError("value out of range for register " + regs_[i].name);
        b += vals[i] * strides_[i];
    }
    return b;
}

Layout Layout::with(Register r) const
{
    auto regs = regs_;
    regs.push_back(std::move(r));
    return Layout(std::move(regs));
}

bool Layout::operator==(const Layout& o) const
{
    if (regs_.size() != o.regs_.size())
        return false;
    for (std::size_t i = 0; i < regs_.size(); ++i)
        if (regs_[i].name != o.regs_[i].name || regs_[i].dim != o.regs_[i].dim)
            return false;
    return true;
}

StateVector::StateVector(Layout layout, Amplitudes amps) : layout_(std::move(layout)), amps_(std::move(amps))
{
    if (static_cast<std::size_t>(amps_.size()) != layout_.dim())
        throw DomainError("amplitude vector does not match layout dimension");
}

StateVector StateVector::basis(const Layout& layout, std::size_t index)
{
    Amplitudes a = Amplitudes::Zero(static_cast<Eigen::Index>(layout.dim()));
    a[static_cast<Eigen::Index>(index)] = 1.0;
    return StateVector(layout, std::move(a));
}

const char* to_string(Direction d) { return d == Direction::forward ? "forward" : "backward"; }

void check_wiring(const Layout& layout, const OracleWiring& w, Elem n, Key key_count)
{
    if (w.query >= layout.count() || w.response >= layout.count() || w.query == w.response)
        throw DomainError("oracle wiring names invalid registers");
    if (!is_power_of_two(n))
        throw DomainError("XOR oracles need a power-of-two domain, got " + std::to_string(n));
    if (layout.reg(w.query).dim != n || layout.reg(w.response).dim != n)
        throw DomainError("query/response register dimension differs from oracle domain");
    if (w.key) {
        if (*w.key >= layout.count() || layout.reg(*w.key).dim != key_count)
            throw DomainError("key register dimension differs from key count");
    } else if (key_count != 1) {
        throw DomainError("cipher oracle needs a key register");
    }
    if (w.direction && (*w.direction >= layout.count() || layout.reg(*w.direction).dim != 2))
        throw DomainError("direction register must be a qubit");
}

namespace {

template <class F>
StateVector xor_oracle(const StateVector& s, const OracleWiring& w, F&& f)
{
    const Layout& L = s.layout();
    Amplitudes out = Amplitudes::Zero(s.amps().size());
    const auto& in = s.amps();
    for (std::size_t b = 0; b < L.dim(); ++b) {
        const Complex a = in[static_cast<Eigen::Index>(b)];
        if (a == Complex(0.0, 0.0))
            continue;
        Key k = w.key ? L.value(b, *w.key) : 0;
        Elem x = L.value(b, w.query);
        Elem y = L.value(b, w.response);
        int dir = w.direction ? static_cast<int>(L.value(b, *w.direction)) : -1;
        out[static_cast<Eigen::Index>(L.with_value(b, w.response, y ^ f(k, x, dir)))] = a;
    }
    return StateVector(L, std::move(out));
}

}

StateVector apply_oracle(const StateVector& s, const OracleWiring& w, const Permutation& pi, Direction d)
{
    check_wiring(s.layout(), w, pi.size(), 1);
    if (d == Direction::forward)
        return xor_oracle(s, w, [&](Key, Elem x, int) { return pi(x); });
    return xor_oracle(s, w, [&](Key, Elem x, int) { return pi.inv(x); });
}

StateVector apply_oracle(const StateVector& s, const OracleWiring& w, const Cipher& e, Direction d)
{
    check_wiring(s.layout(), w, e.size(), e.key_count());
    if (d == Direction::forward)
        return xor_oracle(s, w, [&](Key k, Elem x, int) { return e.enc(k, x); });
    return xor_oracle(s, w, [&](Key k, Elem x, int) { return e.dec(k, x); });
}

StateVector apply_combined_oracle(const StateVector& s, const OracleWiring& w, const Permutation& pi)
{
    check_wiring(s.layout(), w, pi.size(), 1);
    if (!w.direction)
        throw DomainError("combined oracle needs a direction register");
    return xor_oracle(s, w, [&](Key, Elem x, int b) { return b == 0 ? pi(x) : pi.inv(x); });
}

StateVector apply_combined_oracle(const StateVector& s, const OracleWiring& w, const Cipher& e)
{
    check_wiring(s.layout(), w, e.size(), e.key_count());
    if (!w.direction)
        throw DomainError("combined oracle needs a direction register");
    return xor_oracle(s, w, [&](Key k, Elem x, int b) { return b == 0 ? e.enc(k, x) : e.dec(k, x); });
}

template <class Table>
Matrix oracle_matrix(const Layout& layout, const OracleWiring& w, const Table& t, Direction d)
{
    const auto dim = static_cast<Eigen::Index>(layout.dim());
    Matrix m(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c)
        m.col(c) = apply_oracle(StateVector::basis(layout, static_cast<std::size_t>(c)), w, t, d).amps();
    return m;
}

template Matrix oracle_matrix<Permutation>(const Layout&, const OracleWiring&, const Permutation&, Direction);
template Matrix oracle_matrix<Cipher>(const Layout&, const OracleWiring&, const Cipher&, Direction);

StateVector apply_projector(const StateVector& s, const Projector& p)
{
    const Layout& L = s.layout();
    Amplitudes out = s.amps();
    Values key(p.regs.size());
    for (std::size_t b = 0; b < L.dim(); ++b) {
        for (std::size_t i = 0; i < p.regs.size(); ++i)
            key[i] = L.value(b, p.regs[i]);
        if (!p.kept.count(key))
            out[static_cast<Eigen::Index>(b)] = 0.0;
    }
    return StateVector(L, std::move(out));
}

StateVector apply_unitary(const StateVector& s, const Matrix& u)
{
    if (u.rows() != s.amps().size() || u.cols() != s.amps().size())
        throw DomainError("unitary dimension mismatch");
    return StateVector(s.layout(), u * s.amps());
}

std::map<Values, double> measure_distribution(const StateVector& s, const std::vector<std::size_t>& regs)
{
    const Layout& L = s.layout();
    std::map<Values, double> dist;
    Values key(regs.size());
    for (std::size_t b = 0; b < L.dim(); ++b) {
        double p = std::norm(s.amps()[static_cast<Eigen::Index>(b)]);
        if (p == 0.0)
            continue;
        for (std::size_t i = 0; i < regs.size(); ++i)
            key[i] = L.value(b, regs[i]);
        dist[key] += p;
    }
    return dist;
}

bool is_unitary(const Matrix& m, double tol)
{
    if (m.rows() != m.cols())
        return false;
    Matrix d = m.adjoint() * m - Matrix::Identity(m.rows(), m.cols());
    return d.cwiseAbs().maxCoeff() <= tol;
}

double distance(const StateVector& a, const StateVector& b)
{
    if (!(a.layout() == b.layout()))
        throw DomainError("distance: layouts differ");
    return (a.amps() - b.amps()).norm();
}

}
