//! JSON interchange for matrices, algebras, endomorphisms and
//! decompositions. Scalars travel as strings ("3", "-2/7") so exactness
//! survives the trip; every parse goes through the owning field.

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::decomp::Decomposition;
use crate::endo::{DerBasis, Endo};
use crate::error::{Error, Result};
use crate::factor::BlockLinMap;
use crate::field::Field;
use crate::matrix::{Mat, Partition};

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct PartitionJson {
    pub sizes: Vec<usize>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct FieldJson {
    pub characteristic: u64,
}

/// Algebra header carried by every payload that needs field and partition
/// context.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct AlgebraJson {
    pub field: FieldJson,
    pub partition: PartitionJson,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct EndoJson {
    pub algebra: AlgebraJson,
    pub matrix: MatrixJson,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct BlockLinMapJson {
    pub in_shape: [usize; 2],
    pub out_shape: [usize; 2],
    pub action: MatrixJson,
}

/// An element of the algebra: either a full n x n matrix or its coordinate
/// vector in the standard basis.
#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(untagged)]
pub enum ElementBody {
    Matrix(MatrixJson),
    Coords { coords: Vec<String> },
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ElementJson {
    pub algebra: AlgebraJson,
    #[serde(flatten)]
    pub body: ElementBody,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct DecompositionJson {
    #[serde(rename = "X")]
    pub x: MatrixJson,
    pub varphi_1t: EndoJson,
    pub phi_12_2t: EndoJson,
    pub phi_t1t_1t1: EndoJson,
    pub psi_12_13: Option<EndoJson>,
    pub psi_t1_t2: Option<EndoJson>,
}

pub fn mat_to_json(m: &Mat) -> MatrixJson {
    MatrixJson {
        rows: m.rows(),
        cols: m.cols(),
        entries: (1..=m.rows())
            .map(|r| (1..=m.cols()).map(|c| m.at(r, c).to_string()).collect())
            .collect(),
    }
}

pub fn mat_from_json(field: Field, j: &MatrixJson) -> Result<Mat> {
    if j.entries.len() != j.rows || j.entries.iter().any(|row| row.len() != j.cols) {
        return Err(Error::InvalidInput(format!(
            "matrix declared {}x{} but entries do not match",
            j.rows, j.cols
        )));
    }
    let mut m = Mat::zero(field, j.rows, j.cols);
    for (r, row) in j.entries.iter().enumerate() {
        for (c, s) in row.iter().enumerate() {
            m.set(r + 1, c + 1, field.parse(s)?);
        }
    }
    Ok(m)
}

pub fn field_to_json(field: Field) -> FieldJson {
    FieldJson {
        characteristic: field.characteristic(),
    }
}

pub fn field_from_json(j: &FieldJson) -> Result<Field> {
    if j.characteristic == 0 {
        Ok(Field::rationals())
    } else {
        Field::new(j.characteristic)
    }
}

pub fn partition_to_json(p: &Partition) -> PartitionJson {
    PartitionJson {
        sizes: p.sizes().to_vec(),
    }
}

pub fn partition_from_json(j: &PartitionJson) -> Result<Partition> {
    Partition::new(j.sizes.clone())
}

pub fn algebra_to_json(alg: &Algebra) -> AlgebraJson {
    AlgebraJson {
        field: field_to_json(alg.field()),
        partition: partition_to_json(alg.partition()),
    }
}

pub fn algebra_from_json(j: &AlgebraJson) -> Result<Algebra> {
    let field = field_from_json(&j.field)?;
    let part = partition_from_json(&j.partition)?;
    Ok(Algebra::new(field, part))
}

pub fn endo_to_json(alg: &Algebra, e: &Endo) -> EndoJson {
    EndoJson {
        algebra: algebra_to_json(alg),
        matrix: mat_to_json(e.mat()),
    }
}

pub fn endo_from_json(j: &EndoJson) -> Result<(Algebra, Endo)> {
    let alg = algebra_from_json(&j.algebra)?;
    let m = mat_from_json(alg.field(), &j.matrix)?;
    let e = Endo::from_mat(&alg, m)?;
    Ok((alg, e))
}

pub fn element_to_json_matrix(alg: &Algebra, m: &Mat) -> ElementJson {
    ElementJson {
        algebra: algebra_to_json(alg),
        body: ElementBody::Matrix(mat_to_json(m)),
    }
}

pub fn element_to_json_coords(alg: &Algebra, m: &Mat) -> Result<ElementJson> {
    Ok(ElementJson {
        algebra: algebra_to_json(alg),
        body: ElementBody::Coords {
            coords: alg.to_coords(m)?.iter().map(|s| s.to_string()).collect(),
        },
    })
}

/// Reads either element form back into a full matrix, validating strict
/// block upper triangularity via the coordinate map.
pub fn element_from_json(j: &ElementJson) -> Result<(Algebra, Mat)> {
    let alg = algebra_from_json(&j.algebra)?;
    let m = match &j.body {
        ElementBody::Matrix(mj) => {
            let m = mat_from_json(alg.field(), mj)?;
            alg.to_coords(&m)?;
            m
        }
        ElementBody::Coords { coords } => {
            let scalars = coords
                .iter()
                .map(|s| alg.field().parse(s))
                .collect::<Result<Vec<_>>>()?;
            alg.from_coords(&scalars)?
        }
    };
    Ok((alg, m))
}

pub fn block_lin_map_to_json(m: &BlockLinMap) -> BlockLinMapJson {
    BlockLinMapJson {
        in_shape: [m.in_shape().0, m.in_shape().1],
        out_shape: [m.out_shape().0, m.out_shape().1],
        action: mat_to_json(m.action()),
    }
}

pub fn block_lin_map_from_json(field: Field, j: &BlockLinMapJson) -> Result<BlockLinMap> {
    let action = mat_from_json(field, &j.action)?;
    BlockLinMap::from_action(
        field,
        (j.in_shape[0], j.in_shape[1]),
        (j.out_shape[0], j.out_shape[1]),
        action,
    )
}

pub fn der_basis_to_json(alg: &Algebra, b: &DerBasis) -> Vec<EndoJson> {
    b.gens().iter().map(|g| endo_to_json(alg, g)).collect()
}

pub fn decomposition_to_json(alg: &Algebra, dec: &Decomposition) -> DecompositionJson {
    DecompositionJson {
        x: mat_to_json(&dec.x),
        varphi_1t: endo_to_json(alg, &dec.varphi_1t),
        phi_12_2t: endo_to_json(alg, &dec.phi_12_2t),
        phi_t1t_1t1: endo_to_json(alg, &dec.phi_t1t_1t1),
        psi_12_13: dec.psi_12_13.as_ref().map(|e| endo_to_json(alg, e)),
        psi_t1_t2: dec.psi_t1_t2.as_ref().map(|e| endo_to_json(alg, e)),
    }
}

pub fn decomposition_from_json(j: &DecompositionJson) -> Result<(Algebra, Decomposition)> {
    let (alg, varphi_1t) = endo_from_json(&j.varphi_1t)?;
    let same_header = |other: &AlgebraJson| -> Result<()> {
        if other.field.characteristic != alg.field().characteristic()
            || other.partition.sizes != alg.partition().sizes()
        {
            return Err(Error::InvalidInput(
                "decomposition components disagree on field or partition".into(),
            ));
        }
        Ok(())
    };
    let endo_here = |ej: &EndoJson| -> Result<Endo> {
        same_header(&ej.algebra)?;
        Endo::from_mat(&alg, mat_from_json(alg.field(), &ej.matrix)?)
    };
    let phi_12_2t = endo_here(&j.phi_12_2t)?;
    let phi_t1t_1t1 = endo_here(&j.phi_t1t_1t1)?;
    let psi_12_13 = j.psi_12_13.as_ref().map(|e| endo_here(e)).transpose()?;
    let psi_t1_t2 = j.psi_t1_t2.as_ref().map(|e| endo_here(e)).transpose()?;
    let n = alg.partition().n();
    let x = mat_from_json(alg.field(), &j.x)?;
    if x.rows() != n || x.cols() != n {
        return Err(Error::InvalidInput(format!(
            "X must be {n}x{n}, got {}x{}",
            x.rows(),
            x.cols()
        )));
    }
    Ok((
        alg,
        Decomposition {
            x,
            varphi_1t,
            phi_12_2t,
            phi_t1t_1t1,
            psi_12_13,
            psi_t1_t2,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::{char2_showcase, decompose};

    #[test]
    fn matrix_json_roundtrips_exactly() {
        let f = Field::rationals();
        let m = Mat::from_fn(f, 2, 3, |r, c| {
            f.div(&f.from_i64(r as i64 - 2), &f.from_i64(c as i64 + 1))
                .unwrap()
        });
        let j = mat_to_json(&m);
        let s = serde_json::to_string(&j).unwrap();
        let back: MatrixJson = serde_json::from_str(&s).unwrap();
        assert_eq!(mat_from_json(f, &back).unwrap(), m);
    }

    #[test]
    fn matrix_json_frozen_shape() {
        let f = Field::new(5).unwrap();
        let m = Mat::from_i64(f, &[&[1, -2], &[7, 0]]).unwrap();
        let s = serde_json::to_string(&mat_to_json(&m)).unwrap();
        assert_eq!(
            s,
            r#"{"rows":2,"cols":2,"entries":[["1","3"],["2","0"]]}"#
        );
    }

    #[test]
    fn endo_json_roundtrips_with_header() {
        let (alg, f) = char2_showcase(Field::new(2).unwrap());
        let j = endo_to_json(&alg, &f);
        let s = serde_json::to_string(&j).unwrap();
        assert!(s.contains(r#""characteristic":2"#));
        assert!(s.contains(r#""sizes":[1,1,1,1]"#));
        let back: EndoJson = serde_json::from_str(&s).unwrap();
        let (alg2, f2) = endo_from_json(&back).unwrap();
        assert_eq!(alg2.dim(), alg.dim());
        assert_eq!(f2, f);
    }

    #[test]
    fn element_json_accepts_both_forms() {
        let field = Field::new(3).unwrap();
        let alg = Algebra::new(field, Partition::new(vec![1, 2]).unwrap());
        let x = alg.standard_elem(1, 2, 1, 2).unwrap();
        let as_mat = element_to_json_matrix(&alg, &x);
        let as_coords = element_to_json_coords(&alg, &x).unwrap();
        for j in [as_mat, as_coords] {
            let s = serde_json::to_string(&j).unwrap();
            let back: ElementJson = serde_json::from_str(&s).unwrap();
            let (_, m) = element_from_json(&back).unwrap();
            assert_eq!(m, x);
        }
    }

    #[test]
    fn element_json_rejects_non_strict_matrix() {
        let field = Field::new(3).unwrap();
        let alg = Algebra::new(field, Partition::new(vec![1, 2]).unwrap());
        let j = element_to_json_matrix(&alg, &Mat::identity(field, 3));
        assert!(element_from_json(&j).is_err());
    }

    #[test]
    fn decomposition_json_roundtrips() {
        let (alg, f) = char2_showcase(Field::new(2).unwrap());
        let dec = decompose(&alg, &f).unwrap();
        let j = decomposition_to_json(&alg, &dec);
        let s = serde_json::to_string_pretty(&j).unwrap();
        assert!(s.contains(r#""X""#));
        let back: DecompositionJson = serde_json::from_str(&s).unwrap();
        let (_, dec2) = decomposition_from_json(&back).unwrap();
        assert_eq!(dec2, dec);
    }

    #[test]
    fn decomposition_json_null_psi_in_odd_characteristic() {
        let field = Field::new(5).unwrap();
        let alg = Algebra::new(field, Partition::new(vec![1, 1, 1]).unwrap());
        let f = Endo::zero(&alg);
        let dec = decompose(&alg, &f).unwrap();
        let s = serde_json::to_string(&decomposition_to_json(&alg, &dec)).unwrap();
        assert!(s.contains(r#""psi_12_13":null"#));
    }

    #[test]
    fn malformed_payloads_are_rejected() {
        let f = Field::new(5).unwrap();
        let bad_shape: MatrixJson = serde_json::from_str(
            r#"{"rows":2,"cols":2,"entries":[["1","2"]]}"#,
        )
        .unwrap();
        assert!(matches!(
            mat_from_json(f, &bad_shape),
            Err(Error::InvalidInput(_))
        ));
        let bad_scalar: MatrixJson = serde_json::from_str(
            r#"{"rows":1,"cols":1,"entries":[["x"]]}"#,
        )
        .unwrap();
        assert!(mat_from_json(f, &bad_scalar).is_err());
        assert!(field_from_json(&FieldJson { characteristic: 6 }).is_err());
        assert!(partition_from_json(&PartitionJson { sizes: vec![] }).is_err());
        assert!(partition_from_json(&PartitionJson { sizes: vec![1, 0] }).is_err());
    }

    #[test]
    fn block_lin_map_json_roundtrips() {
        let f = Field::new(7).unwrap();
        let x = Mat::from_i64(f, &[&[1, 2], &[3, 4], &[5, 6]]).unwrap();
        let map = BlockLinMap::from_fn(f, (2, 3), (2, 2), |m| m.mul(&x)).unwrap();
        let j = block_lin_map_to_json(&map);
        let s = serde_json::to_string(&j).unwrap();
        let back: BlockLinMapJson = serde_json::from_str(&s).unwrap();
        assert_eq!(block_lin_map_from_json(f, &back).unwrap(), map);
    }
}
