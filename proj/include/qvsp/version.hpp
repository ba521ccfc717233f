#ifndef QVSP_VERSION_HPP
#define QVSP_VERSION_HPP

namespace qvsp {
inline constexpr const char* kVersion = "0.1.0";
}  // namespace qvsp

#endif  // QVSP_VERSION_HPP
