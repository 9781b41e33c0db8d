#pragma once

namespace nnicp::detail {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace nnicp::detail
