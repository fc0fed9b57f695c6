#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "chs/grassmann.hpp"

namespace chs {

enum class VarKind {
    Position,
    Momentum,
    Velocity,  // jet variable of some order >= 1
    Time,
    Ghost,
    Antighost,
    Auxiliary,
    GrassmannConstant,
};

struct VarEntry {
    std::string name;
    Parity parity = Parity::Even;
    VarKind kind = VarKind::Position;
    int ghost_number = 0;
    int pair = -1;       // position <-> momentum link
    int jet_base = -1;   // Velocity: id of the order-0 position
    int jet_order = 0;   // Velocity: derivative order n >= 1
    int zeta_index = 0;  // GrassmannConstant: 1-based generator index
};

/// Ordered, append-only variable table. Expressions refer to variables by
/// index, so extending the table never invalidates existing expressions.
class VariableTable {
public:
    int add(VarEntry e);
    int add(const std::string& name, Parity parity, VarKind kind, int ghost_number = 0);
    /// Declares the N Grassmann generators as odd constants zeta1..zetaN.
    void add_grassmann_generators(int count);
    /// Adds a momentum variable paired with an existing position.
    int add_momentum(int position_id, const std::string& name);

    int find(const std::string& name) const;  // -1 when absent
    int require(const std::string& name) const;
    const VarEntry& entry(int id) const { return entries_.at(id); }
    int size() const { return static_cast<int>(entries_.size()); }
    int time_id() const { return time_id_; }
    int generator_count() const { return gens_; }
    /// Grassmann generator variable id for 1-based generator index.
    int zeta_id(int index) const;

    std::vector<int> ids_of_kind(VarKind k) const;
    /// True when this table begins with exactly the entries of base.
    bool extends(const VariableTable& base) const;

private:
    std::vector<VarEntry> entries_;
    std::map<std::string, int> by_name_;
    std::vector<int> zeta_ids_;
    int gens_ = 0;
    int time_id_ = -1;
};

using TablePtr = std::shared_ptr<const VariableTable>;

}  // namespace chs
