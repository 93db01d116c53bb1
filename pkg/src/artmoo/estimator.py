"""scikit-learn style front end for the topological ART clusterer."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin
from sklearn.utils import check_array, check_random_state
from sklearn.utils.validation import check_is_fitted

from .cim import cim_rows
from .network import TopoNetwork, adaptive_train_ca, connected_components, train_ca


class CimArtClustering(BaseEstimator, ClusterMixin):
    """Online topological clustering with vigilance-gated node creation.

    Parameters
    ----------
    similarity_threshold : float
        Vigilance value in (0, 1); larger values merge more aggressively and
        produce fewer nodes.
    bandwidth_window : int
        Number of recent samples used to re-estimate the kernel bandwidth.
    node_budget : int or None
        When set, the threshold is tuned by pseudo-binary search so the node
        count lands within [0.75, 1.25] times the budget.
    shuffle : bool
        Present samples in a random order instead of the given one.
    random_state : int, Generator or None
        Source of the presentation order when ``shuffle`` is on.

    Attributes
    ----------
    network_ : TopoNetwork
        The learned prototype graph.
    labels_ : ndarray
        Connected-component label of each training sample's winner node.
    n_clusters_ : int
        Number of connected components.
    similarity_threshold_ : float
        Threshold actually used (differs from the parameter when tuned).
    """

    def __init__(
        self,
        similarity_threshold: float = 0.1,
        bandwidth_window: int = 100,
        node_budget: int | None = None,
        shuffle: bool = False,
        random_state=None,
    ):
        self.similarity_threshold = similarity_threshold
        self.bandwidth_window = bandwidth_window
        self.node_budget = node_budget
        self.shuffle = shuffle
        self.random_state = random_state

    def fit(self, X, y=None):
        X = check_array(X, dtype=float)
        if self.bandwidth_window < 1:
            raise ValueError("bandwidth_window must be a positive integer")
        if self.shuffle:
            order = check_random_state(self.random_state).permutation(len(X))
            stream = X[order]
        else:
            stream = X
        if self.node_budget is not None:
            result = adaptive_train_ca(
                stream, self.bandwidth_window, self.similarity_threshold, self.node_budget
            )
            self.network_ = result.network
            self.similarity_threshold_ = result.threshold
            self.n_passes_ = result.passes
        else:
            self.network_ = train_ca(
                stream, TopoNetwork(X.shape[1]), self.bandwidth_window, self.similarity_threshold
            )
            self.similarity_threshold_ = self.similarity_threshold
            self.n_passes_ = 1
        self.node_labels_ = connected_components(self.network_)
        self.n_clusters_ = int(self.node_labels_.max() + 1) if self.network_.node_count else 0
        self.n_features_in_ = X.shape[1]
        self.labels_ = self.predict(X)
        return self

    def predict(self, X) -> np.ndarray:
        """Component label of each sample's most similar node."""
        check_is_fitted(self, "network_")
        X = check_array(X, dtype=float)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(
                f"X has {X.shape[1]} features, but the clusterer was fitted with {self.n_features_in_}"
            )
        if self.network_.node_count == 0:
            raise ValueError("the fitted network has no nodes")
        sigma = self.network_.mean_bandwidth()
        labels = np.empty(len(X), dtype=np.int64)
        for i, x in enumerate(X):
            winner = int(np.argmin(cim_rows(x, self.network_.positions, sigma)))
            labels[i] = self.node_labels_[winner]
        return labels
