#include "aksz/variables.hpp"

#include <stdexcept>

namespace aksz {

VarId Universe::add(VarInfo info) {
    if (info.kind == VarKind::Theta && info.form_degree != 1)
        throw std::logic_error("theta variable must have form degree 1");
    if (info.kind != VarKind::Theta && info.form_degree != 0)
        throw std::logic_error("only theta variables carry form degree");
    VarId id = VarId::make(static_cast<uint32_t>(infos_.size()), info.parity());
    infos_.push_back(std::move(info));
    return id;
}

VarId Universe::id_at(uint32_t index) const {
    return VarId::make(index, infos_.at(index).parity());
}

VarId Universe::find(const std::string& name) const {
    for (uint32_t i = 0; i < infos_.size(); ++i)
        if (infos_[i].name == name) return id_at(i);
    throw std::out_of_range("no variable named " + name);
}

bool Universe::contains(const std::string& name) const {
    for (const auto& v : infos_)
        if (v.name == name) return true;
    return false;
}

}  // namespace aksz
