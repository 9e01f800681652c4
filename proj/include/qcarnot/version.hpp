#ifndef QCARNOT_VERSION_HPP
#define QCARNOT_VERSION_HPP

namespace qcarnot {

inline constexpr const char* version = "0.1.0";

} // namespace qcarnot

#endif
