#include "vcseffort/effort.hpp"

#include "vcseffort/error.hpp"

#include <algorithm>

namespace vcseffort {

namespace {

void require_theta(int theta) {
  if (theta < 1)
    throw ParameterError("theta must be at least 1");
}

} // namespace

PersonMonths developer_effort(std::uint64_t activity, int theta, int months) {
  require_theta(theta);
  if (months < 1)
    throw ParameterError("period length must be at least one month");
  if (activity >= static_cast<std::uint64_t>(theta))
    return PersonMonths(months);
  return PersonMonths(static_cast<std::int64_t>(activity) * months, theta);
}

EffortReport project_effort(const ActivityMatrix& m, int theta) {
  require_theta(theta);
  const auto n_per = static_cast<std::ptrdiff_t>(m.period_count());
  const auto n_dev = m.developer_count();
  const auto cap = static_cast<std::uint64_t>(theta);

  EffortReport r;
  r.theta = theta;
  r.months = m.length_months();
  r.per_period.resize(m.period_count());

  // Every term in a period shares the denominator theta, so the period total
  // is months * sum(min(a, theta)) / theta.
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t p = 0; p < n_per; ++p) {
    auto pi = static_cast<std::size_t>(p);
    std::uint64_t capped = 0;
    std::uint32_t active = 0;
    for (std::size_t d = 0; d < n_dev; ++d) {
      auto a = m.at(d, pi);
      capped += std::min<std::uint64_t>(a, cap);
      active += a > 0;
    }
    r.per_period[pi] = {m.periods()[pi].label,
                        PersonMonths(static_cast<std::int64_t>(capped) * m.length_months(), theta),
                        active};
  }

  for (const auto& p : r.per_period)
    r.total += p.effort;
  r.upper_bound = upper_bound(m);
  return r;
}

EffortReport project_effort_serial(const ActivityMatrix& m, int theta) {
  require_theta(theta);
  EffortReport r;
  r.theta = theta;
  r.months = m.length_months();
  for (std::size_t p = 0; p < m.period_count(); ++p) {
    PeriodEffort pe{m.periods()[p].label, PersonMonths(0), 0};
    for (std::size_t d = 0; d < m.developer_count(); ++d) {
      pe.effort += developer_effort(m.at(d, p), theta, m.length_months());
      pe.active_developers += m.at(d, p) > 0;
    }
    r.total += pe.effort;
    r.per_period.push_back(std::move(pe));
  }
  r.upper_bound = upper_bound(m);
  return r;
}

PersonMonths upper_bound(const ActivityMatrix& m) {
  auto cells = m.cells();
  auto active = std::count_if(cells.begin(), cells.end(), [](std::uint32_t a) { return a > 0; });
  return PersonMonths(static_cast<std::int64_t>(active) * m.length_months());
}

ErrorTable error_table(const ActivityMatrix& m, int theta_selected, std::span<const int> thetas) {
  ErrorTable t;
  t.theta_selected = theta_selected;
  t.base = project_effort(m, theta_selected).total;
  t.defined = t.base.numerator() != 0;
  for (int theta : thetas) {
    ErrorRow row{theta, project_effort(m, theta).total, std::nullopt};
    if (t.defined && theta != theta_selected)
      row.percent = (row.effort - t.base) / t.base * 100;
    t.rows.push_back(row);
  }
  return t;
}

std::vector<EffortReport> effort_by_theta(const ActivityMatrix& m, std::span<const int> thetas) {
  std::vector<EffortReport> out;
  out.reserve(thetas.size());
  for (int theta : thetas)
    out.push_back(project_effort(m, theta));
  return out;
}

std::string format_fixed(const PersonMonths& value, int decimals) {
  using i128 = __int128;
  i128 num = value.numerator();
  i128 den = value.denominator(); // boost keeps it positive
  bool negative = num < 0;
  if (negative)
    num = -num;
  i128 scale = 1;
  for (int i = 0; i < decimals; ++i)
    scale *= 10;
  i128 scaled = num * scale;
  i128 q = scaled / den;
  i128 rem = scaled % den;
  if (2 * rem > den || (2 * rem == den && q % 2 == 1))
    ++q;

  std::string digits;
  for (i128 v = q; v > 0; v /= 10)
    digits.insert(digits.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
  if (static_cast<int>(digits.size()) <= decimals)
    digits.insert(0, static_cast<std::size_t>(decimals) + 1 - digits.size(), '0');
  if (decimals > 0)
    digits.insert(digits.end() - decimals, '.');
  if (negative && q != 0)
    digits.insert(digits.begin(), '-');
  return digits;
}

std::string format_signed(const PersonMonths& value, int decimals) {
  auto s = format_fixed(value, decimals);
  if (value.numerator() > 0 && s.find_first_not_of("0.") != std::string::npos)
    s.insert(s.begin(), '+');
  return s;
}

double to_double(const PersonMonths& value) {
  return static_cast<double>(value.numerator()) / static_cast<double>(value.denominator());
}

} // namespace vcseffort
