//! Standalone matplotlib script rendering a sweep CSV as a surface and a
//! contour plot of the minimum `p` over `(θ, φ)`.

pub fn plot_script(csv_path: &str, theta_steps: usize, phi_steps: usize) -> String {
    let csv_literal = serde_json::to_string(csv_path).expect("path serializes");
    format!(
        r#"#!/usr/bin/env python3
"""Surface and contour plots of the minimum RC threshold p* over (theta, phi).

Generated by `rcdistill sweep`. Cells without a threshold are left blank.
"""
import csv
import sys

import matplotlib.pyplot as plt
import numpy as np

CSV_PATH = {csv_literal}
THETA_STEPS = {theta_steps}
PHI_STEPS = {phi_steps}


def load(path):
    theta = np.empty(PHI_STEPS * THETA_STEPS)
    phi = np.empty_like(theta)
    p_star = np.full_like(theta, np.nan)
    with open(path, newline="") as fh:
        for k, row in enumerate(csv.DictReader(fh)):
            theta[k] = float(row["theta"])
            phi[k] = float(row["phi"])
            if row["p_star"]:
                p_star[k] = float(row["p_star"])
    shape = (PHI_STEPS, THETA_STEPS)
    return theta.reshape(shape), phi.reshape(shape), p_star.reshape(shape)


def main():
    path = sys.argv[1] if len(sys.argv) > 1 else CSV_PATH
    theta, phi, p_star = load(path)
    fig = plt.figure(figsize=(12, 5))

    ax = fig.add_subplot(1, 2, 1, projection="3d")
    ax.plot_surface(theta, phi, np.ma.masked_invalid(p_star), cmap="viridis")
    ax.set_xlabel(r"$\theta$")
    ax.set_ylabel(r"$\phi$")
    ax.set_zlabel(r"$p^*$")

    ax = fig.add_subplot(1, 2, 2)
    cs = ax.contour(theta, phi, np.ma.masked_invalid(p_star), levels=20, cmap="viridis")
    ax.clabel(cs, inline=True, fontsize=7)
    ax.set_xlabel(r"$\theta$")
    ax.set_ylabel(r"$\phi$")
    ax.set_title(r"minimum $p$ detected by the reduction criterion")

    fig.tight_layout()
    out = path.rsplit(".", 1)[0] + ".png"
    fig.savefig(out, dpi=150)
    print(out)


if __name__ == "__main__":
    main()
"#
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embeds_path_and_grid() {
        let s = plot_script("out dir/sweep.csv", 7, 5);
        assert!(s.contains(r#"CSV_PATH = "out dir/sweep.csv""#));
        assert!(s.contains("THETA_STEPS = 7"));
        assert!(s.contains("PHI_STEPS = 5"));
    }
}
