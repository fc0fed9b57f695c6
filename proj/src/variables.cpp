#include "chs/variables.hpp"

namespace chs {

int VariableTable::add(VarEntry e) {
    if (e.name.empty()) throw Error("variable name empty");
    if (by_name_.count(e.name)) throw Error("duplicate variable name: " + e.name);
    if (e.kind == VarKind::Time) {
        if (time_id_ >= 0) throw Error("time variable already declared");
        if (e.parity != Parity::Even) throw Error("time variable must be even");
    }
    int id = static_cast<int>(entries_.size());
    by_name_[e.name] = id;
    if (e.kind == VarKind::Time) time_id_ = id;
    if (e.kind == VarKind::GrassmannConstant) {
        if (e.parity != Parity::Odd) throw Error("Grassmann generators are odd");
        e.zeta_index = ++gens_;
        zeta_ids_.push_back(id);
    }
    entries_.push_back(std::move(e));
    return id;
}

int VariableTable::add(const std::string& name, Parity parity, VarKind kind, int ghost_number) {
    VarEntry e;
    e.name = name;
    e.parity = parity;
    e.kind = kind;
    e.ghost_number = ghost_number;
    return add(std::move(e));
}

void VariableTable::add_grassmann_generators(int count) {
    for (int i = 0; i < count; ++i)
        add("zeta" + std::to_string(gens_ + 1), Parity::Odd, VarKind::GrassmannConstant);
}

int VariableTable::add_momentum(int position_id, const std::string& name) {
    const VarEntry& pos = entry(position_id);
    if (pos.kind != VarKind::Position) throw Error("momentum must pair with a position");
    if (pos.pair >= 0) throw Error("position already has a momentum: " + pos.name);
    VarEntry e;
    e.name = name;
    e.parity = pos.parity;
    e.kind = VarKind::Momentum;
    e.pair = position_id;
    int id = add(std::move(e));
    entries_[position_id].pair = id;
    return id;
}

int VariableTable::find(const std::string& name) const {
    auto it = by_name_.find(name);
    return it == by_name_.end() ? -1 : it->second;
}

int VariableTable::require(const std::string& name) const {
    int id = find(name);
    if (id < 0) throw Error("unknown identifier: " + name);
    return id;
}

int VariableTable::zeta_id(int index) const {
    if (index < 1 || index > gens_) throw Error("Grassmann generator index out of range");
    return zeta_ids_[index - 1];
}

std::vector<int> VariableTable::ids_of_kind(VarKind k) const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
        if (entries_[i].kind == k) out.push_back(i);
    return out;
}

bool VariableTable::extends(const VariableTable& base) const {
    if (base.size() > size()) return false;
    for (int i = 0; i < base.size(); ++i) {
        const VarEntry& a = entries_[i];
        const VarEntry& b = base.entries_[i];
        if (a.name != b.name || a.parity != b.parity || a.kind != b.kind) return false;
    }
    return true;
}

}  // namespace chs
