//! Built-in geometries with their expected verdicts.

use crate::config::{ConfigError, Geometry};
use crate::report::Verdict;

/// A catalog geometry, its config text and the verdict each listed task must
/// produce under the default seed and tolerance.
#[derive(Clone, Copy, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub summary: &'static str,
    pub config: &'static str,
    pub expected: &'static [(&'static str, Verdict)],
}

impl CatalogEntry {
    pub fn geometry(&self) -> Result<Geometry, ConfigError> {
        Geometry::parse(self.config)
    }

    pub fn expected(&self, task: &str) -> Option<Verdict> {
        self.expected.iter().find(|(t, _)| *t == task).map(|e| e.1)
    }

    /// File name used by `examples emit`.
    pub fn file_name(&self) -> String {
        format!("{}.toml", self.name)
    }
}

use Verdict::{Fail, Pass};

const EUCLIDEAN_2: &str = r#"name = "euclidean_2"

[chart]
dim = 2
coords = ["x1", "x2"]
box = [[-1.0, 1.0], [-1.0, 1.0]]

[metric]
components = ["1", "0", "1"]

[complex_structure]
rows = [["0", "-1"], ["1", "0"]]

[map]
components = ["x1"]
codomain = "weyl.codomain"

[weyl.codomain]
coords = ["y1"]
box = [[-2.0, 2.0]]
metric = ["1"]

[run]
tasks = ["hwc", "harmonic", "morphism", "chain", "fundamental", "trace-b", "theorem23", "nijenhuis"]
"#;

const EUCLIDEAN_3: &str = r#"name = "euclidean_3"

[chart]
dim = 3
coords = ["x1", "x2", "x3"]
box = [[-1.0, 1.0], [-1.0, 1.0], [-1.0, 1.0]]

[map]
components = ["x1", "x2"]

[weyl.codomain]
coords = ["y1", "y2"]
box = [[-2.0, 2.0], [-2.0, 2.0]]

[run]
tasks = ["eq13", "einstein-weyl", "morphism", "chain", "fundamental", "trace-b", "theorem23", "codomain-lee", "fuglede", "twistorial", "ricci-horizontal"]
"#;

const EUCLIDEAN_4: &str = r#"name = "euclidean_4"

[chart]
dim = 4
coords = ["x1", "x2", "x3", "x4"]
box = [[-1.0, 1.0], [-1.0, 1.0], [-1.0, 1.0], [-1.0, 1.0]]

[complex_structure]
rows = [["0", "-1", "0", "0"], ["1", "0", "0", "0"], ["0", "0", "0", "-1"], ["0", "0", "1", "0"]]

[map]
components = ["x1", "x2", "x3"]

[weyl.codomain]
coords = ["y1", "y2", "y3"]
box = [[-2.0, 2.0], [-2.0, 2.0], [-2.0, 2.0]]

[run]
tasks = ["eq13", "einstein-weyl", "asd", "hermitian-weyl", "nijenhuis", "morphism", "chain", "fundamental", "theorem23", "fuglede", "twistorial", "thm44a", "eq41", "extract-k", "ricci-horizontal", "prop56", "lemma55"]
"#;

const CONSTANT_CURVATURE_3: &str = r#"name = "constant_curvature_3"

[chart]
dim = 3
coords = ["x1", "x2", "x3"]
box = [[-0.8, 0.8], [-0.8, 0.8], [-0.8, 0.8]]

[metric]
components = ["4/(1 + x1^2 + x2^2 + x3^2)^2", "0", "0", "4/(1 + x1^2 + x2^2 + x3^2)^2", "0", "4/(1 + x1^2 + x2^2 + x3^2)^2"]

[gauduchon_tod]
k = "2"

[run]
tasks = ["eq13", "einstein-weyl", "gauduchon-tod", "gt-flat"]
"#;

const CONSTANT_CURVATURE_4: &str = r#"name = "constant_curvature_4"

[chart]
dim = 4
coords = ["x1", "x2", "x3", "x4"]
box = [[-0.8, 0.8], [-0.8, 0.8], [-0.8, 0.8], [-0.8, 0.8]]

[metric]
components = [
  "4/(1 + x1^2 + x2^2 + x3^2 + x4^2)^2", "0", "0", "0",
  "4/(1 + x1^2 + x2^2 + x3^2 + x4^2)^2", "0", "0",
  "4/(1 + x1^2 + x2^2 + x3^2 + x4^2)^2", "0",
  "4/(1 + x1^2 + x2^2 + x3^2 + x4^2)^2",
]

[run]
tasks = ["eq13", "einstein-weyl", "asd"]
"#;

const PRODUCT_PLANES: &str = r#"name = "product_planes"

[chart]
dim = 4
coords = ["x1", "x2", "x3", "x4"]
box = [[-1.0, 1.0], [-1.0, 1.0], [-1.0, 1.0], [-1.0, 1.0]]

[complex_structure]
rows = [["0", "-1", "0", "0"], ["1", "0", "0", "0"], ["0", "0", "0", "-1"], ["0", "0", "1", "0"]]

[map]
components = ["x1", "x2"]

[weyl.codomain]
coords = ["y1", "y2"]
box = [[-2.0, 2.0], [-2.0, 2.0]]
complex_structure = [["0", "-1"], ["1", "0"]]

[run]
tasks = ["morphism", "chain", "fundamental", "trace-b", "theorem23", "fuglede", "holomorphic", "lemma34", "prop311", "twistorial"]
"#;

const PRODUCT_S2_LINE: &str = r#"name = "product_s2_line"

[chart]
dim = 3
coords = ["x1", "x2", "x3"]
box = [[-1.0, 1.0], [-1.0, 1.0], [-1.0, 1.0]]

[metric]
components = ["4/(1 + x1^2 + x2^2)^2", "0", "0", "4/(1 + x1^2 + x2^2)^2", "0", "1"]

[map]
components = ["x1", "x2"]

[weyl.codomain]
coords = ["y1", "y2"]
box = [[-2.0, 2.0], [-2.0, 2.0]]
metric = ["4/(1 + y1^2 + y2^2)^2", "0", "4/(1 + y1^2 + y2^2)^2"]

[run]
tasks = ["eq13", "einstein-weyl", "morphism", "chain", "fundamental", "trace-b", "theorem23", "twistorial", "ricci-horizontal"]
"#;

const GIBBONS_HAWKING: &str = r#"name = "gibbons_hawking"

# h = 1 + x1 and A = x2 dx3, so dA = *dh for the chart orientation.
[chart]
dim = 4
coords = ["x1", "x2", "x3", "t"]
box = [[0.5, 1.5], [-1.0, 1.0], [-1.0, 1.0], [-1.0, 1.0]]
orientation = 1

[metric]
components = [
  "1 + x1", "0", "0", "0",
  "1 + x1", "0", "0",
  "1 + x1 + x2^2/(1 + x1)", "x2/(1 + x1)",
  "1/(1 + x1)",
]

[lee_form]
components = ["0", "0", "0", "0"]

[map]
components = ["x1", "x2", "x3"]
codomain = "weyl.codomain"

[weyl.codomain]
coords = ["y1", "y2", "y3"]
box = [[0.25, 2.0], [-1.5, 1.5], [-1.5, 1.5]]

[run]
tasks = ["eq13", "einstein-weyl", "asd", "morphism", "chain", "fundamental", "trace-b", "theorem23", "codomain-lee", "fuglede", "twistorial", "thm44a", "eq41", "extract-k", "ricci-horizontal", "prop56", "lemma55"]
"#;

const GIBBONS_HAWKING_LEE: &str = r#"name = "gibbons_hawking_lee"

# Domain Lee form perturbed by 0.3 dx1; the codomain keeps the flat connection.
[chart]
dim = 4
coords = ["x1", "x2", "x3", "t"]
box = [[0.5, 1.5], [-1.0, 1.0], [-1.0, 1.0], [-1.0, 1.0]]

[metric]
components = [
  "1 + x1", "0", "0", "0",
  "1 + x1", "0", "0",
  "1 + x1 + x2^2/(1 + x1)", "x2/(1 + x1)",
  "1/(1 + x1)",
]

[lee_form]
components = ["0.3", "0", "0", "0"]

[map]
components = ["x1", "x2", "x3"]

[weyl.codomain]
coords = ["y1", "y2", "y3"]
box = [[0.25, 2.0], [-1.5, 1.5], [-1.5, 1.5]]

[run]
tasks = ["morphism", "chain", "fundamental", "theorem23", "twistorial", "thm44a", "eq41"]
"#;

const GIBBONS_HAWKING_COLEE: &str = r#"name = "gibbons_hawking_colee"

# Lee forms 0.3 dx1 and 0.6 dy1: still a harmonic morphism, no longer twistorial.
[chart]
dim = 4
coords = ["x1", "x2", "x3", "t"]
box = [[0.5, 1.5], [-1.0, 1.0], [-1.0, 1.0], [-1.0, 1.0]]

[metric]
components = [
  "1 + x1", "0", "0", "0",
  "1 + x1", "0", "0",
  "1 + x1 + x2^2/(1 + x1)", "x2/(1 + x1)",
  "1/(1 + x1)",
]

[lee_form]
components = ["0.3", "0", "0", "0"]

[map]
components = ["x1", "x2", "x3"]

[weyl.codomain]
coords = ["y1", "y2", "y3"]
box = [[0.25, 2.0], [-1.5, 1.5], [-1.5, 1.5]]
lee_form = ["0.6", "0", "0"]

[run]
tasks = ["morphism", "chain", "fundamental", "theorem23", "twistorial", "thm44a", "eq41", "prop56", "lemma55"]
"#;

const GIBBONS_HAWKING_2D: &str = r#"name = "gibbons_hawking_2d"

# Gibbons-Hawking followed by (y1, y2, y3) -> (y2, y3), with the Kahler
# structure whose fundamental form is (dt + A) ^ dx1 - h dx2 ^ dx3.
[chart]
dim = 4
coords = ["x1", "x2", "x3", "t"]
box = [[0.5, 1.5], [-1.0, 1.0], [-1.0, 1.0], [-1.0, 1.0]]

[metric]
components = [
  "1 + x1", "0", "0", "0",
  "1 + x1", "0", "0",
  "1 + x1 + x2^2/(1 + x1)", "x2/(1 + x1)",
  "1/(1 + x1)",
]

[complex_structure]
rows = [
  ["0", "0", "x2/(1 + x1)", "1/(1 + x1)"],
  ["0", "0", "1", "0"],
  ["0", "-1", "0", "0"],
  ["-(1 + x1)", "x2", "0", "0"],
]

[map]
components = ["x2", "x3"]

[weyl.codomain]
coords = ["y1", "y2"]
box = [[-1.5, 1.5], [-1.5, 1.5]]
complex_structure = [["0", "1"], ["-1", "0"]]

[run]
tasks = ["hermitian-weyl", "nijenhuis", "morphism", "chain", "fundamental", "theorem23", "holomorphic", "lemma34", "prop311", "twistorial"]
"#;

const KILLING_ROTATION: &str = r#"name = "killing_rotation"

# Orbit map of the Killing field x1 d/dx2 - x2 d/dx1; the codomain carries
# the Lee form dr/r, which makes the orbit map a harmonic morphism.
[chart]
dim = 4
coords = ["x1", "x2", "x3", "x4"]
box = [[0.5, 1.5], [-1.0, 1.0], [-1.0, 1.0], [-1.0, 1.0]]

[map]
components = ["sqrt(x1^2 + x2^2)", "x3", "x4"]

[weyl.codomain]
coords = ["y1", "y2", "y3"]
box = [[0.25, 2.5], [-1.5, 1.5], [-1.5, 1.5]]
lee_form = ["1/y1", "0", "0"]

[run]
tasks = ["morphism", "chain", "fundamental", "trace-b", "theorem23", "codomain-lee", "twistorial", "thm44a", "extract-k", "prop56", "lemma55"]
"#;

const KILLING_ROTATION_UNWEIGHTED: &str = r#"name = "killing_rotation_unweighted"

[chart]
dim = 4
coords = ["x1", "x2", "x3", "x4"]
box = [[0.5, 1.5], [-1.0, 1.0], [-1.0, 1.0], [-1.0, 1.0]]

[map]
components = ["sqrt(x1^2 + x2^2)", "x3", "x4"]

[weyl.codomain]
coords = ["y1", "y2", "y3"]
box = [[0.25, 2.5], [-1.5, 1.5], [-1.5, 1.5]]

[run]
tasks = ["hwc", "harmonic", "morphism", "chain", "fundamental", "theorem23", "codomain-lee", "thm44a"]
"#;

const HOPF_TYPE: &str = r#"name = "hopf_type"

[chart]
dim = 4
coords = ["x1", "x2", "x3", "x4"]
box = [[0.3, 1.0], [-1.0, 1.0], [-1.0, 1.0], [-1.0, 1.0]]

[map]
components = ["x1^2 + x2^2 - x3^2 - x4^2", "2*(x1*x3 + x2*x4)", "2*(x2*x3 - x1*x4)"]

[weyl.codomain]
coords = ["y1", "y2", "y3"]
box = [[-4.5, 4.5], [-4.5, 4.5], [-4.5, 4.5]]

[run]
tasks = ["morphism", "chain", "fundamental", "trace-b", "theorem23", "fuglede", "twistorial", "thm44a", "extract-k", "prop56", "lemma55"]
"#;

const HOLOMORPHIC_SQUARE: &str = r#"name = "holomorphic_square"

# (x1 + i x2)^2 on the first complex factor of R^4.
[chart]
dim = 4
coords = ["x1", "x2", "x3", "x4"]
box = [[0.3, 1.0], [-1.0, 1.0], [-1.0, 1.0], [-1.0, 1.0]]

[complex_structure]
rows = [["0", "-1", "0", "0"], ["1", "0", "0", "0"], ["0", "0", "0", "-1"], ["0", "0", "1", "0"]]

[map]
components = ["x1^2 - x2^2", "2*x1*x2"]

[weyl.codomain]
coords = ["y1", "y2"]
box = [[-2.5, 2.5], [-2.5, 2.5]]
complex_structure = [["0", "-1"], ["1", "0"]]

[run]
tasks = ["hermitian-weyl", "nijenhuis", "morphism", "chain", "fundamental", "theorem23", "fuglede", "holomorphic", "lemma34", "prop311", "twistorial"]
"#;

const HOLOMORPHIC_WEIGHTED: &str = r#"name = "holomorphic_weighted"

# Holomorphic but not harmonic: the domain carries the Lee form dx1 + x3 dx2.
[chart]
dim = 4
coords = ["x1", "x2", "x3", "x4"]
box = [[0.3, 1.0], [-1.0, 1.0], [-1.0, 1.0], [-1.0, 1.0]]

[lee_form]
components = ["1", "x3", "0", "0"]

[complex_structure]
rows = [["0", "-1", "0", "0"], ["1", "0", "0", "0"], ["0", "0", "0", "-1"], ["0", "0", "1", "0"]]

[map]
components = ["x1^2 - x2^2", "2*x1*x2"]

[weyl.codomain]
coords = ["y1", "y2"]
box = [[-2.5, 2.5], [-2.5, 2.5]]
lee_form = ["0.2*y2", "0"]
complex_structure = [["0", "-1"], ["1", "0"]]

[run]
tasks = ["harmonic", "chain", "holomorphic", "lemma34", "prop311"]
"#;

const TWISTED_J: &str = r#"name = "twisted_J"

# g = dx1^2 + dx2^2 + (dx3 - f dx1)^2 + dx4^2 with f = x4/2, and the
# orthogonal J sending d/dx1 + f d/dx3 to d/dx2 and d/dx3 to d/dx4.
[chart]
dim = 4
coords = ["x1", "x2", "x3", "x4"]
box = [[-1.0, 1.0], [-1.0, 1.0], [-1.0, 1.0], [-1.0, 1.0]]

[metric]
components = ["1 + x4^2/4", "0", "-x4/2", "0", "1", "0", "0", "1", "0", "1"]

[complex_structure]
rows = [["0", "-1", "0", "0"], ["1", "0", "0", "0"], ["0", "-x4/2", "0", "-1"], ["-x4/2", "0", "1", "0"]]

[map]
components = ["x1", "x2"]

[weyl.codomain]
coords = ["y1", "y2"]
box = [[-2.0, 2.0], [-2.0, 2.0]]

[run]
tasks = ["nijenhuis", "hermitian-weyl", "morphism", "prop311", "twistorial"]
"#;

const WARPED_3TO2: &str = r#"name = "warped_3to2"

# Vertical lines of (x1, x2, x3) -> (x1, x2) are not geodesic.
[chart]
dim = 3
coords = ["x1", "x2", "x3"]
box = [[0.2, 1.0], [-1.0, 1.0], [-1.0, 1.0]]

[metric]
components = ["1", "0", "0", "1", "0", "1 + x1^2"]

[map]
components = ["x1", "x2"]

[weyl.codomain]
coords = ["y1", "y2"]
box = [[-2.0, 2.0], [-2.0, 2.0]]

[run]
tasks = ["hwc", "harmonic", "morphism", "chain", "fundamental", "trace-b", "theorem23", "twistorial"]
"#;

const RADIAL: &str = r#"name = "radial"

# r on R^3 minus the origin: horizontally conformal, not harmonic.
[chart]
dim = 3
coords = ["x1", "x2", "x3"]
box = [[0.5, 1.5], [-1.0, 1.0], [-1.0, 1.0]]

[map]
components = ["sqrt(x1^2 + x2^2 + x3^2)"]

[weyl.codomain]
coords = ["r"]
box = [[0.1, 3.0]]

[run]
tasks = ["hwc", "harmonic", "morphism", "chain", "fundamental", "trace-b", "theorem23"]
"#;

const FLAT_WITH_PARALLEL_LEE: &str = r#"name = "flat_with_parallel_lee"

[chart]
dim = 4
coords = ["x1", "x2", "x3", "x4"]
box = [[-1.0, 1.0], [-1.0, 1.0], [-1.0, 1.0], [-1.0, 1.0]]

[lee_form]
components = ["0.7", "0", "0", "0"]

[complex_structure]
rows = [["0", "-1", "0", "0"], ["1", "0", "0", "0"], ["0", "0", "0", "-1"], ["0", "0", "1", "0"]]

[map]
components = ["x2", "x3", "x4"]

[weyl.codomain]
coords = ["y1", "y2", "y3"]
box = [[-2.0, 2.0], [-2.0, 2.0], [-2.0, 2.0]]

[run]
tasks = ["eq13", "einstein-weyl", "asd", "hermitian-weyl", "morphism", "chain", "fundamental", "trace-b", "theorem23", "twistorial", "thm44a", "eq41"]
"#;

const FLAT_WITH_CURL_LEE: &str = r#"name = "flat_with_curl_lee"

# Lee form x1 dx2, so the Faraday form is dx1 ^ dx2.
[chart]
dim = 3
coords = ["x1", "x2", "x3"]
box = [[-1.0, 1.0], [-1.0, 1.0], [-1.0, 1.0]]

[lee_form]
components = ["0", "x1", "0"]

[map]
components = ["x1", "x2"]

[weyl.codomain]
coords = ["y1", "y2"]
box = [[-2.0, 2.0], [-2.0, 2.0]]

[run]
tasks = ["eq13", "einstein-weyl", "harmonic", "morphism", "chain", "fundamental", "trace-b", "theorem23", "codomain-lee"]
"#;

const SPLIT_FIELDS: &str = r#"name = "split_fields"

# Foliation by the orbits of x1 d/dx2 - x2 d/dx1, given by its vector field.
[chart]
dim = 3
coords = ["x1", "x2", "x3"]
box = [[0.5, 1.5], [-1.0, 1.0], [-1.0, 1.0]]

[distribution]
fields = [["-x2", "x1", "0"]]

[run]
tasks = ["eq13", "trace-b"]
"#;

pub static CATALOG: &[CatalogEntry] = &[
    CatalogEntry {
        name: "euclidean_2",
        summary: "flat plane, projection to a line, standard J",
        config: EUCLIDEAN_2,
        expected: &[
            ("hwc", Pass),
            ("harmonic", Pass),
            ("morphism", Pass),
            ("chain", Pass),
            ("fundamental", Pass),
            ("trace-b", Pass),
            ("theorem23", Pass),
            ("nijenhuis", Pass),
        ],
    },
    CatalogEntry {
        name: "euclidean_3",
        summary: "flat R^3 projected to R^2",
        config: EUCLIDEAN_3,
        expected: &[
            ("eq13", Pass),
            ("einstein-weyl", Pass),
            ("morphism", Pass),
            ("chain", Pass),
            ("fundamental", Pass),
            ("trace-b", Pass),
            ("theorem23", Pass),
            ("codomain-lee", Pass),
            ("fuglede", Pass),
            ("twistorial", Pass),
            ("ricci-horizontal", Pass),
        ],
    },
    CatalogEntry {
        name: "euclidean_4",
        summary: "flat R^4 projected to R^3, standard J",
        config: EUCLIDEAN_4,
        expected: &[
            ("eq13", Pass),
            ("einstein-weyl", Pass),
            ("asd", Pass),
            ("hermitian-weyl", Pass),
            ("nijenhuis", Pass),
            ("morphism", Pass),
            ("chain", Pass),
            ("fundamental", Pass),
            ("theorem23", Pass),
            ("fuglede", Pass),
            ("twistorial", Pass),
            ("thm44a", Pass),
            ("eq41", Pass),
            ("extract-k", Pass),
            ("ricci-horizontal", Pass),
            ("prop56", Pass),
            ("lemma55", Pass),
        ],
    },
    CatalogEntry {
        name: "constant_curvature_3",
        summary: "round 3-sphere in stereographic chart, Gauduchon-Tod with k = 2",
        config: CONSTANT_CURVATURE_3,
        expected: &[("eq13", Pass), ("einstein-weyl", Pass), ("gauduchon-tod", Pass), ("gt-flat", Pass)],
    },
    CatalogEntry {
        name: "constant_curvature_4",
        summary: "round 4-sphere in stereographic chart",
        config: CONSTANT_CURVATURE_4,
        expected: &[("eq13", Pass), ("einstein-weyl", Pass), ("asd", Pass)],
    },
    CatalogEntry {
        name: "product_planes",
        summary: "R^2 x R^2 projected to the first factor",
        config: PRODUCT_PLANES,
        expected: &[
            ("morphism", Pass),
            ("chain", Pass),
            ("fundamental", Pass),
            ("trace-b", Pass),
            ("theorem23", Pass),
            ("fuglede", Pass),
            ("holomorphic", Pass),
            ("lemma34", Pass),
            ("prop311", Pass),
            ("twistorial", Pass),
        ],
    },
    CatalogEntry {
        name: "product_s2_line",
        summary: "S^2 x R projected to S^2",
        config: PRODUCT_S2_LINE,
        expected: &[
            ("eq13", Pass),
            ("einstein-weyl", Fail),
            ("morphism", Pass),
            ("chain", Pass),
            ("fundamental", Pass),
            ("trace-b", Pass),
            ("theorem23", Pass),
            ("twistorial", Pass),
            ("ricci-horizontal", Pass),
        ],
    },
    CatalogEntry {
        name: "gibbons_hawking",
        summary: "Gibbons-Hawking metric with h = 1 + x1 over flat R^3",
        config: GIBBONS_HAWKING,
        expected: &[
            ("eq13", Pass),
            ("einstein-weyl", Pass),
            ("asd", Pass),
            ("morphism", Pass),
            ("chain", Pass),
            ("fundamental", Pass),
            ("trace-b", Pass),
            ("theorem23", Pass),
            ("codomain-lee", Pass),
            ("fuglede", Pass),
            ("twistorial", Pass),
            ("thm44a", Pass),
            ("eq41", Pass),
            ("extract-k", Pass),
            ("ricci-horizontal", Pass),
            ("prop56", Pass),
            ("lemma55", Pass),
        ],
    },
    CatalogEntry {
        name: "gibbons_hawking_lee",
        summary: "Gibbons-Hawking with the domain Lee form perturbed",
        config: GIBBONS_HAWKING_LEE,
        expected: &[
            ("morphism", Fail),
            ("chain", Pass),
            ("fundamental", Pass),
            ("theorem23", Pass),
            ("twistorial", Pass),
            ("thm44a", Pass),
            ("eq41", Fail),
        ],
    },
    CatalogEntry {
        name: "gibbons_hawking_colee",
        summary: "Gibbons-Hawking with both Lee forms perturbed",
        config: GIBBONS_HAWKING_COLEE,
        expected: &[
            ("morphism", Pass),
            ("chain", Pass),
            ("fundamental", Pass),
            ("theorem23", Pass),
            ("twistorial", Fail),
            ("thm44a", Pass),
            ("eq41", Fail),
            ("prop56", Fail),
            ("lemma55", Pass),
        ],
    },
    CatalogEntry {
        name: "gibbons_hawking_2d",
        summary: "Gibbons-Hawking composed with a projection to R^2, Kahler J",
        config: GIBBONS_HAWKING_2D,
        expected: &[
            ("hermitian-weyl", Pass),
            ("nijenhuis", Pass),
            ("morphism", Pass),
            ("chain", Pass),
            ("fundamental", Pass),
            ("theorem23", Pass),
            ("holomorphic", Pass),
            ("lemma34", Pass),
            ("prop311", Pass),
            ("twistorial", Pass),
        ],
    },
    CatalogEntry {
        name: "killing_rotation",
        summary: "orbit map of a rotation of R^4, codomain Lee form dr/r",
        config: KILLING_ROTATION,
        expected: &[
            ("morphism", Pass),
            ("chain", Pass),
            ("fundamental", Pass),
            ("trace-b", Pass),
            ("theorem23", Pass),
            ("codomain-lee", Pass),
            ("twistorial", Fail),
            ("thm44a", Pass),
            ("extract-k", Fail),
            ("prop56", Fail),
            ("lemma55", Pass),
        ],
    },
    CatalogEntry {
        name: "killing_rotation_unweighted",
        summary: "the rotation orbit map onto flat R^3",
        config: KILLING_ROTATION_UNWEIGHTED,
        expected: &[
            ("hwc", Pass),
            ("harmonic", Fail),
            ("morphism", Fail),
            ("chain", Pass),
            ("fundamental", Pass),
            ("theorem23", Pass),
            ("codomain-lee", Pass),
            ("thm44a", Pass),
        ],
    },
    CatalogEntry {
        name: "hopf_type",
        summary: "Hopf-type quadratic map from R^4 minus the origin to R^3",
        config: HOPF_TYPE,
        expected: &[
            ("morphism", Pass),
            ("chain", Pass),
            ("fundamental", Pass),
            ("trace-b", Pass),
            ("theorem23", Pass),
            ("fuglede", Pass),
            ("twistorial", Fail),
            ("thm44a", Pass),
            ("extract-k", Fail),
            ("prop56", Pass),
            ("lemma55", Pass),
        ],
    },
    CatalogEntry {
        name: "holomorphic_square",
        summary: "z -> z^2 on the first factor of C^2",
        config: HOLOMORPHIC_SQUARE,
        expected: &[
            ("hermitian-weyl", Pass),
            ("nijenhuis", Pass),
            ("morphism", Pass),
            ("chain", Pass),
            ("fundamental", Pass),
            ("theorem23", Pass),
            ("fuglede", Pass),
            ("holomorphic", Pass),
            ("lemma34", Pass),
            ("prop311", Pass),
            ("twistorial", Pass),
        ],
    },
    CatalogEntry {
        name: "holomorphic_weighted",
        summary: "z -> z^2 with non-trivial Lee forms on both sides",
        config: HOLOMORPHIC_WEIGHTED,
        expected: &[("harmonic", Fail), ("chain", Pass), ("holomorphic", Pass), ("lemma34", Pass), ("prop311", Pass)],
    },
    CatalogEntry {
        name: "twisted_J",
        summary: "non-integrable orthogonal J on a sheared flat metric",
        config: TWISTED_J,
        expected: &[
            ("nijenhuis", Fail),
            ("hermitian-weyl", Pass),
            ("morphism", Pass),
            ("prop311", Pass),
            ("twistorial", Fail),
        ],
    },
    CatalogEntry {
        name: "warped_3to2",
        summary: "projection with non-geodesic vertical lines",
        config: WARPED_3TO2,
        expected: &[
            ("hwc", Pass),
            ("harmonic", Fail),
            ("morphism", Fail),
            ("chain", Pass),
            ("fundamental", Pass),
            ("trace-b", Pass),
            ("theorem23", Pass),
            ("twistorial", Fail),
        ],
    },
    CatalogEntry {
        name: "radial",
        summary: "distance to the origin in R^3",
        config: RADIAL,
        expected: &[
            ("hwc", Pass),
            ("harmonic", Fail),
            ("morphism", Fail),
            ("chain", Pass),
            ("fundamental", Pass),
            ("trace-b", Pass),
            ("theorem23", Pass),
        ],
    },
    CatalogEntry {
        name: "flat_with_parallel_lee",
        summary: "flat R^4 with Lee form 0.7 dx1",
        config: FLAT_WITH_PARALLEL_LEE,
        expected: &[
            ("eq13", Pass),
            ("einstein-weyl", Fail),
            ("asd", Pass),
            ("hermitian-weyl", Pass),
            ("morphism", Pass),
            ("chain", Pass),
            ("fundamental", Pass),
            ("trace-b", Pass),
            ("theorem23", Pass),
            ("twistorial", Pass),
            ("thm44a", Pass),
            ("eq41", Pass),
        ],
    },
    CatalogEntry {
        name: "flat_with_curl_lee",
        summary: "flat R^3 with a non-closed Lee form",
        config: FLAT_WITH_CURL_LEE,
        expected: &[
            ("eq13", Pass),
            ("einstein-weyl", Fail),
            ("harmonic", Fail),
            ("morphism", Fail),
            ("chain", Pass),
            ("fundamental", Pass),
            ("trace-b", Pass),
            ("theorem23", Pass),
            ("codomain-lee", Fail),
        ],
    },
    CatalogEntry {
        name: "split_fields",
        summary: "rotation orbits given by a vector field",
        config: SPLIT_FIELDS,
        expected: &[("eq13", Pass), ("trace-b", Pass)],
    },
];

pub fn catalog() -> &'static [CatalogEntry] {
    CATALOG
}

pub fn find(name: &str) -> Option<&'static CatalogEntry> {
    CATALOG.iter().find(|e| e.name == name)
}
