use serde::Serialize;

use super::{build_transition_matrix, enumerate_reachable, mixing_time, OracleError, TrChain};
use crate::chain_fixed::FixedChain;
use crate::orientation::Orientation3;
use crate::triangulation::{build_slow_gadget, GadgetLabels, Triangulation};

/// Fan position (1-based) of the single fan edge leaving the hub.
pub fn green_position(t: &Triangulation, labels: &GadgetLabels, o: &Orientation3) -> usize {
    let out: Vec<usize> = o.out_neighbors(t, labels.hub).into_iter().filter_map(|x| labels.fan_position(x)).collect();
    assert_eq!(out.len(), 1, "the hub has exactly one outgoing fan edge");
    out[0]
}

/// Exact bottleneck measurements of `M_TR` on the slow gadget.
#[derive(Debug, Clone, Serialize)]
pub struct BottleneckReport {
    pub t: usize,
    pub n: usize,
    pub states: usize,
    /// Number of states for each fan position of the hub's green edge.
    pub by_position: Vec<usize>,
    /// States with the pivot edge green.
    pub pivot_green: usize,
    /// States with the pivot edge red or green, and the rest.
    pub d_size: usize,
    pub dbar_size: usize,
    /// Whether the pivot-green state separates the red-pivot states from
    /// the blue-pivot states (only meaningful when `pivot_green == 1`).
    pub cut_vertex: bool,
    pub phi: String,
    pub phi_value: f64,
    /// `2^(-(n-6)/4)`.
    pub phi_bound: f64,
    pub tmax: usize,
    /// Worst-case `tau(1/4)`, or `None` past the horizon.
    pub tau_quarter: Option<usize>,
    /// `1/(4 phi) - 1/2`.
    pub tau_lower_bound: f64,
    pub tv: Vec<f64>,
}

pub fn gadget_bottleneck(t: usize, cap: usize, tmax: usize) -> Result<BottleneckReport, OracleError> {
    let (tri, labels) = build_slow_gadget(t).map_err(|_| OracleError::EmptySide)?;
    let n = tri.n_internal();
    let chain = FixedChain::new(tri);
    let tri = chain.triangulation();
    let o = Orientation3::initial(tri).expect("gadgets have 3-orientations");
    let spec = TrChain(&chain);
    let space = enumerate_reachable(&spec, o, cap)?;
    let p = build_transition_matrix(&spec, &space)?;
    let pos: Vec<usize> = space.states().iter().map(|o| green_position(tri, &labels, o)).collect();
    let pivot = t + 1;
    let mut by_position = vec![0; labels.fan.len() + 1];
    for &j in &pos {
        by_position[j] += 1;
    }
    let in_d: Vec<bool> = pos.iter().map(|&j| j >= pivot).collect();
    let d_size = in_d.iter().filter(|&&b| b).count();
    let greens: Vec<usize> = (0..pos.len()).filter(|&i| pos[i] == pivot).collect();
    let red: Vec<usize> = (0..pos.len()).filter(|&i| pos[i] > pivot).collect();
    let blue: Vec<usize> = (0..pos.len()).filter(|&i| pos[i] < pivot).collect();
    let cut_vertex = greens.len() == 1 && p.separates(greens[0], &red, &blue);
    let phi = p.conductance_of_cut(&in_d)?;
    let phi_value = *phi.numer() as f64 / *phi.denom() as f64;
    let tv = p.worst_tv_curve(tmax);
    let tau_quarter = mixing_time(&tv, 0.25).ok();
    Ok(BottleneckReport {
        t,
        n,
        states: space.len(),
        by_position,
        pivot_green: greens.len(),
        d_size,
        dbar_size: pos.len() - d_size,
        cut_vertex,
        phi: phi.to_string(),
        phi_value,
        phi_bound: 2f64.powf(-((n as f64) - 6.0) / 4.0),
        tmax,
        tau_quarter,
        tau_lower_bound: 1.0 / (4.0 * phi_value) - 0.5,
        tv,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_gadget() {
        let r = gadget_bottleneck(2, 100_000, 50).unwrap();
        assert_eq!(r.n, 6);
        assert_eq!(r.d_size + r.dbar_size, r.states);
        assert_eq!(r.by_position.iter().sum::<usize>(), r.states);
    }
}
