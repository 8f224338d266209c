use std::collections::BTreeMap;

use crate::molecule::{cell_to, globe, globe_molecule, paste, u_nm, Molecule};
use crate::ogp::{Ogp, Sign};
use crate::products::{gray_labelled, smash_collapse, GenCell, Label, LabelledComplex, BASEPOINT};

/// A generating cell of a presented complex: a labelled atom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagCell {
    pub name: String,
    pub dim: usize,
    pub shape: LabelledComplex,
}

/// A diagrammatic complex given by its generating cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagPresentation {
    pub name: String,
    pub cells: Vec<DiagCell>,
}

impl DiagPresentation {
    pub fn cell(&self, name: &str) -> Option<&DiagCell> {
        self.cells.iter().find(|c| c.name == name)
    }

    pub fn gen_cells(&self) -> Vec<GenCell> {
        self.cells
            .iter()
            .map(|c| {
                if c.name == BASEPOINT {
                    GenCell::basepoint()
                } else {
                    GenCell::new(&c.name, c.dim)
                }
            })
            .collect()
    }

    pub fn counts(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for c in &self.cells {
            *out.entry(c.dim).or_insert(0) += 1;
        }
        out
    }

    /// Dual of every shape, with cells and labels renamed by `rename`.
    pub fn dual(&self, name: &str, rename: &dyn Fn(&str) -> String) -> DiagPresentation {
        let relabel = |l: &Label| match l {
            Label::Gen(s) => Label::Gen(rename(s)),
            l => l.clone(),
        };
        DiagPresentation {
            name: name.into(),
            cells: self
                .cells
                .iter()
                .map(|c| {
                    let new = rename(&c.name);
                    let mut shape = c.shape.shape.dual(None);
                    shape.set_name(new.clone());
                    DiagCell {
                        name: new,
                        dim: c.dim,
                        shape: LabelledComplex {
                            shape,
                            labels: c.shape.labels.iter().map(relabel).collect(),
                        },
                    }
                })
                .collect(),
        }
    }
}

/// Renames elements to `dim.k`, numbering each dimension in id order.
fn tidy(p: &Ogp, name: &str) -> Ogp {
    let mut seen = vec![0usize; (p.dimension() + 1).max(1) as usize];
    let mut map = BTreeMap::new();
    for x in 0..p.len() {
        let d = p.dim(x);
        map.insert(p.id(x).to_string(), format!("{d}.{}", seen[d]));
        seen[d] += 1;
    }
    p.rename(name, |s| map[s].clone())
}

fn same_name(s: &str) -> String {
    s.to_string()
}

fn cell(name: &str, shape: Ogp, label: impl Fn(&Ogp, usize) -> Label) -> DiagCell {
    let shape = tidy(&shape, name);
    let labels = (0..shape.len()).map(|x| label(&shape, x)).collect();
    DiagCell {
        name: name.into(),
        dim: shape.dimension() as usize,
        shape: LabelledComplex { shape, labels },
    }
}

fn wire_or_point(p: &Ogp, x: usize) -> Option<Label> {
    match p.dim(x) {
        0 => Some(Label::Basepoint),
        1 => Some(Label::gen("1")),
        _ => None,
    }
}

/// 2-cells with a single input wire stand for the unit.
fn unit_cells(p: &Ogp) -> Vec<usize> {
    (0..p.len())
        .filter(|&x| p.dim(x) == 2 && p.faces(x).iter().filter(|f| f.1 == Sign::Minus).count() == 1)
        .collect()
}

/// Labels for the shapes of the unit laws: the unit's input wire is the
/// basepoint, the output 2-cell is degenerate.
fn unitor_label(p: &Ogp, x: usize, top: &str) -> Label {
    let units = unit_cells(p);
    let t = p.greatest(&p.full()).unwrap();
    match p.dim(x) {
        0 => Label::Basepoint,
        1 => {
            let under_unit = units
                .iter()
                .any(|&u| p.orientation(u, x) == Some(Sign::Minus));
            if under_unit {
                Label::Basepoint
            } else {
                Label::gen("1")
            }
        }
        2 if units.contains(&x) => Label::gen("η"),
        2 if p.orientation(t, x) == Some(Sign::Plus) => Label::Unit("1".into()),
        2 => Label::gen("μ"),
        _ => Label::gen(top),
    }
}

fn mol(m: Result<Molecule, crate::molecule::MolError>) -> Molecule {
    m.expect("builtin shapes paste")
}

/// The presented complex of monoids: basepoint, one wire, `μ`, `η`, and
/// the associator and unitors.
pub fn mon_complex() -> DiagPresentation {
    let o1 = globe_molecule(1);
    let o2 = globe_molecule(2);
    let mu = u_nm(2, 1);
    let assoc_in = mol(paste(&mol(paste(&mu, &o1, 0)), &mu, 1));
    let assoc_out = mol(paste(&mol(paste(&o1, &mu, 0)), &mu, 1));
    let left_in = mol(paste(&mol(paste(&o2, &o1, 0)), &mu, 1));
    let right_in = mol(paste(&mol(paste(&o1, &o2, 0)), &mu, 1));
    let alpha = mol(cell_to(&assoc_in, &assoc_out));
    let lambda = mol(cell_to(&left_in, &mu));
    let rho = mol(cell_to(&right_in, &mu));
    let cells = vec![
        cell(BASEPOINT, globe(0), |_, _| Label::Basepoint),
        cell("1", globe(1), |p, x| wire_or_point(p, x).unwrap()),
        cell("μ", mu.shape.clone(), |p, x| wire_or_point(p, x).unwrap_or(Label::gen("μ"))),
        cell("η", globe(2), |p, x| match p.dim(x) {
            0 => Label::Basepoint,
            1 if p.orientation(p.index_of("2.0").unwrap(), x) == Some(Sign::Minus) => Label::Basepoint,
            1 => Label::gen("1"),
            _ => Label::gen("η"),
        }),
        cell("α", alpha.shape, |p, x| {
            wire_or_point(p, x).unwrap_or(if p.dim(x) == 2 {
                Label::gen("μ")
            } else {
                Label::gen("α")
            })
        }),
        cell("λ", lambda.shape, |p, x| unitor_label(p, x, "λ")),
        cell("ρ", rho.shape, |p, x| unitor_label(p, x, "ρ")),
    ];
    DiagPresentation {
        name: "MonComplex".into(),
        cells,
    }
}

fn co_cell_name(s: &str) -> String {
    match s {
        "μ" => "δ".into(),
        "η" => "ε".into(),
        "α" | "λ" | "ρ" => format!("{s}°"),
        s => same_name(s),
    }
}

/// Duals of all the cells of [`mon_complex`].
pub fn co_mon_complex() -> DiagPresentation {
    mon_complex().dual("coMonComplex", &co_cell_name)
}

/// Generating cells `x⊗y` of the smash product, with their shapes.
pub fn presentation_of_smash(x: &DiagPresentation, y: &DiagPresentation) -> DiagPresentation {
    let mut cells = vec![cell(BASEPOINT, globe(0), |_, _| Label::Basepoint)];
    for cx in x.cells.iter().filter(|c| c.name != BASEPOINT) {
        for cy in y.cells.iter().filter(|c| c.name != BASEPOINT) {
            let mut shape = smash_collapse(&gray_labelled(&cx.shape, &cy.shape));
            let name = format!("{}⊗{}", cx.name, cy.name);
            shape.shape.set_name(name.clone());
            cells.push(DiagCell {
                name,
                dim: cx.dim + cy.dim,
                shape,
            });
        }
    }
    DiagPresentation {
        name: format!("{}∧{}", x.name, y.name),
        cells,
    }
}
