package org.tunedroid;

import java.util.Locale;

public final class TrackUtils {

    private TrackUtils() {
    }

    public static String displayTitle(Track track) {
        String title = track.getTitle();
        if (title == null || title.isEmpty()) {
            return "Unknown track";
        }
        return title.trim();
    }

    public static String formatDuration(int millis) {
        int seconds = millis / 1000;
        return String.format(Locale.US, "%d:%02d", seconds / 60, seconds % 60);
    }
}
