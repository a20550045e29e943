package org.echoplayer;

import android.app.Service;
import android.content.Intent;
import android.media.AudioManager;
import android.media.MediaPlayer;
import android.os.Binder;
import android.os.IBinder;

public class MediaService extends Service {

    private MediaPlayer mediaPlayer;
    private PlaylistQueue playlistQueue;
    private boolean shuffleEnabled;

    @Override
    public IBinder onBind(Intent intent) {
        return new Binder();
    }

    public void play() {
        if (mediaPlayer == null) {
            mediaPlayer = new MediaPlayer();
            mediaPlayer.setAudioStreamType(AudioManager.STREAM_MUSIC);
        }
        mediaPlayer.start();
    }

    public void pause() {
        mediaPlayer.pause();
    }

    public boolean isPlaying() {
        return mediaPlayer != null && mediaPlayer.isPlaying();
    }

    public void setShuffle(boolean enabled) {
        shuffleEnabled = enabled;
        playlistQueue.reshuffle();
    }

    public Track nextTrack() {
        return playlistQueue.next(shuffleEnabled);
    }
}
