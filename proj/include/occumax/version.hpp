#ifndef OCCUMAX_VERSION_HPP
#define OCCUMAX_VERSION_HPP

namespace occumax {

inline constexpr const char* kToolName = "occumax";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace occumax

#endif
