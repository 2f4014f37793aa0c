//! Saturation, rank covering radius and the bound tables.

mod bounds;
mod code;
mod saturation;

pub use bounds::{is_prime_power, known_value, lower_bound, prime_power, upper_bound, KnownValue};
pub use code::{
    code_from_system, covering_radius, covering_radius_naive, covering_radius_syndrome,
    rank_weight, Code,
};
pub use saturation::{
    is_at_most_saturating, is_point_saturated, is_rank_saturating, line_collision,
    on_secant_bruteforce, point_unsaturated_by, saturating_index, saturation_report,
    SaturationReport,
};


#[cfg(test)]
mod tests;
